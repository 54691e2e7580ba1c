pub(crate) mod control;
pub(crate) mod generic;
pub(crate) mod numeric;
pub(crate) mod vector;
