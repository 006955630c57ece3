//! Sign-flip mutations of coordinate data and whether the checks notice them.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::frak::verify_structure_with;
use crate::graded::{assemble, check_jacobi_with, CoordinateData, JacobiMode, ProductId};
use crate::par::Exec;

#[derive(Clone, Debug, Serialize)]
pub struct MutationOutcome {
    pub product: String,
    pub detected: bool,
    /// Which check caught it: validation, Jacobi or a structural check.
    pub caught_by: Option<String>,
}

/// Negates one product matrix and runs validation, full Jacobi and the
/// structural checks on the result.
pub fn mutate_and_check(data: &CoordinateData, id: &ProductId, exec: Exec) -> Result<MutationOutcome> {
    let mutated = data.with_negated(id);
    let caught_by = if let Err(e) = mutated.validate() {
        Some(format!("validation: {e}"))
    } else {
        let l = assemble(&mutated)?;
        let j = check_jacobi_with(&l, JacobiMode::Full, exec);
        if !j.pass() {
            Some(format!("jacobi: {} violating triples", j.violations))
        } else {
            let s = verify_structure_with(&mutated, exec)?;
            s.failures().first().map(|c| format!("structure: {}", c.name))
        }
    };
    Ok(MutationOutcome {
        product: id.to_string(),
        detected: caught_by.is_some(),
        caught_by,
    })
}

/// Mutates `count` distinct nonzero products chosen with a seeded shuffle
/// (all of them when `count` exceeds their number).
pub fn mutation_sensitivity(
    data: &CoordinateData,
    count: usize,
    seed: u64,
    exec: Exec,
) -> Result<Vec<MutationOutcome>> {
    let mut ids = data.nonzero_products();
    ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    ids.truncate(count);
    ids.iter().map(|id| mutate_and_check(data, id, exec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::{example_sl_2n1, extract_coordinates};

    #[test]
    fn every_sign_flip_is_detected() {
        for n in [3, 4] {
            let x = extract_coordinates(&example_sl_2n1(n).unwrap()).unwrap();
            let all = x.data.nonzero_products().len();
            let out = mutation_sensitivity(&x.data, all, 1, Exec::Parallel).unwrap();
            assert_eq!(out.len(), all);
            for o in &out {
                println!("n={n} {} -> {:?}", o.product, o.caught_by);
            }
            assert!(out.iter().all(|o| o.detected));
        }
    }
}
