//! Published examples of evolved optimisers, keyed by training function.
//! Useful as fixtures and as starting points for re-evaluation.

/// `(training label, program text)`. The last entry was trained on all
/// four functions at once.
pub const EVOLVED_OPTIMISERS: [(&str, &str); 5] = [
    (
        "F1",
        "(input.index float.min 0.68 float.+ float.tan vector.pop vector.wrand vector.- 0.75)",
    ),
    (
        "F2",
        "(vector.yank vector.pop vector.yank float.ln vector.wrand vector.- 0.89 vector.wrand vector.-)",
    ),
    (
        "F6",
        "(float.tan vector.wrand vector.yank vector.pop vector.- 0.61 vector.wrand vector.-)",
    ),
    (
        "F9",
        "(vector./ float.* vector./ float.sin vector.dim+ vector.swap float.rand)",
    ),
    (
        "F1,2,6,9",
        "(float.tan vector.wrand) (code.noop (((code.noop)) (((integer.fromboolean code.noop))) input.index ((vector.+ () integer.% ((exec.do*count) ((vector.shove) )))) vector.wrand  ((vector.wrand))))",
    ),
];
