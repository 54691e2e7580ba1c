use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use super::Individual;

/// Samples `k` individuals with replacement and returns the fittest (lowest
/// scalar fitness), breaking ties uniformly.
pub fn tournament_select<'a, R: Rng + ?Sized>(
    population: &'a [Individual],
    k: usize,
    rng: &mut R,
) -> &'a Individual {
    assert!(!population.is_empty() && k >= 1);
    let mut best = rng.random_range(0..population.len());
    let mut ties = 1u32;
    for _ in 1..k {
        let i = rng.random_range(0..population.len());
        let (a, b) = (population[i].scalar_fitness, population[best].scalar_fitness);
        if a < b {
            best = i;
            ties = 1;
        } else if a == b {
            // reservoir sampling over tied entrants
            ties += 1;
            if rng.random_range(0..ties) == 0 {
                best = i;
            }
        }
    }
    &population[best]
}

/// Lexicase selection: cases are visited in random order and each keeps
/// only the candidates within `epsilon` (0 for plain lexicase) of the best
/// value on that case. Survivors at the end are picked from uniformly.
pub fn lexicase_select<'a, R: Rng + ?Sized>(
    population: &'a [Individual],
    epsilon: Option<f64>,
    rng: &mut R,
) -> &'a Individual {
    assert!(!population.is_empty());
    let cases = population[0].fitness_cases.len();
    let mut order: Vec<usize> = (0..cases).collect();
    order.shuffle(rng);
    let eps = epsilon.unwrap_or(0.0);
    let mut candidates: Vec<usize> = (0..population.len()).collect();
    for case in order {
        if candidates.len() == 1 {
            break;
        }
        let best = candidates
            .iter()
            .map(|&i| population[i].fitness_cases[case])
            .fold(f64::INFINITY, f64::min);
        candidates.retain(|&i| {
            let v = population[i].fitness_cases[case];
            v <= best + eps || v == best
        });
    }
    &population[*candidates.choose(rng).expect("at least one survivor")]
}
