//! Seeded generator of valid triples for property tests.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gentle::{is_gentle, is_skewed_gentle};
use crate::quiver::{Arrow, ArrowId, BoundQuiver, Quiver, SkewedGentleTriple};

pub const RETRY_BUDGET: usize = 1000;

fn sample_pair(rng: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> BoundQuiver {
    let n = rng.random_range(1..=max_vertices.max(1));
    let vertices: Vec<String> = (1..=n).map(|i| format!("{i}")).collect();
    let wanted = rng.random_range(max_arrows / 2..=max_arrows);
    let mut outdeg = alloc::vec![0usize; n];
    let mut indeg = alloc::vec![0usize; n];
    let mut arrows = Vec::new();
    for _ in 0..wanted {
        // a few tries per arrow keeps the degree bound from starving dense requests
        for _ in 0..8 {
            let s = rng.random_range(0..n);
            let t = rng.random_range(0..n);
            if outdeg[s] < 2 && indeg[t] < 2 {
                outdeg[s] += 1;
                indeg[t] += 1;
                arrows.push(Arrow::new(format!("a{}", arrows.len() + 1), vertices[s].clone(), vertices[t].clone()));
                break;
            }
        }
    }

    let mut relations: Vec<(ArrowId, ArrowId)> = Vec::new();
    for v in &vertices {
        let mut ins: Vec<&Arrow> = arrows.iter().filter(|a| &a.target == v).collect();
        let mut outs: Vec<&Arrow> = arrows.iter().filter(|a| &a.source == v).collect();
        ins.shuffle(rng);
        outs.shuffle(rng);
        let most = ins.len().min(outs.len());
        let least = ins.len().max(outs.len()).saturating_sub(1).min(most);
        let k = if rng.random_bool(0.75) { most } else { rng.random_range(least..=most) };
        for (o, i) in outs.iter().zip(ins.iter()).take(k) {
            relations.push((o.name.clone(), i.name.clone()));
        }
    }

    let quiver = Quiver::new(vertices, arrows).expect("generated names are distinct");
    BoundQuiver::new(quiver, relations).expect("generated relations compose")
}

/// A valid triple on at most `max_vertices` vertices and `max_arrows`
/// arrows, fully determined by `seed`.
pub fn random_triple(seed: u64, max_vertices: usize, max_arrows: usize) -> Result<SkewedGentleTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("R{seed}");
    for _ in 0..RETRY_BUDGET {
        let pair = sample_pair(&mut rng, max_vertices, max_arrows);
        if !is_gentle(&pair) || !pair.is_finite_dimensional() {
            continue;
        }
        let mut order: Vec<String> = pair.quiver().vertices().iter().cloned().collect();
        order.shuffle(&mut rng);
        let mut special: BTreeSet<String> = BTreeSet::new();
        let mut triple = SkewedGentleTriple::new(name.clone(), pair, special.iter().cloned())?;
        for v in order {
            if !rng.random_bool(0.5) {
                continue;
            }
            special.insert(v.clone());
            let candidate = triple.with_special(special.iter().cloned())?;
            if is_skewed_gentle(&candidate) {
                triple = candidate;
            } else {
                special.remove(&v);
            }
        }
        return Ok(triple);
    }
    Err(Error::GenerationExhausted { attempts: RETRY_BUDGET })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gentle::validate_skewed_gentle;

    #[test]
    fn generated_triples_are_valid() {
        for seed in 0..50 {
            let t = random_triple(seed, 5, 7).unwrap();
            assert!(validate_skewed_gentle(&t).skewed_gentle, "seed {seed}");
            assert!(t.quiver().vertices().len() <= 5);
            assert!(t.quiver().arrow_count() <= 7);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_triple(1, 4, 4).unwrap(), random_triple(1, 4, 4).unwrap());
    }

    #[test]
    fn single_vertex() {
        let t = random_triple(2, 1, 0).unwrap();
        assert_eq!(t.quiver().vertices().len(), 1);
        assert_eq!(t.quiver().arrow_count(), 0);
        assert!(t.special().len() <= 1);
        assert_eq!(t.name(), "R2");
    }

    #[test]
    fn seeds_vary() {
        let distinct: BTreeSet<_> = (0..20)
            .map(|s| {
                let t = random_triple(s, 5, 6).unwrap();
                (t.quiver().clone().arrow_count(), t.pair().relations().len(), t.special().len())
            })
            .collect();
        assert!(distinct.len() > 3);
    }
}
