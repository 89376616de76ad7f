//! Seeded random trees and exhaustive enumeration of small ones.

use fwdtree_core::RawGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Shape {
    /// Node `k` picks its parent uniformly from `0..k`.
    UniformRandom,
    Path,
    Star,
    /// A path of `ceil(N/2)` nodes with every remaining node attached to a
    /// random spine node.
    Caterpillar,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::UniformRandom, Shape::Path, Shape::Star, Shape::Caterpillar];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, clap::ValueEnum)]
pub enum Numbering {
    /// Datum `0`, parent below child, edges as `(parent, child)` by child.
    #[default]
    Valid,
    /// Every label including the datum permuted, edge endpoints flipped at
    /// random and edge order shuffled.
    Scrambled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    pub shape: Shape,
    pub numbering: Numbering,
}

impl GeneratorConfig {
    pub fn new(n: usize, seed: u64, shape: Shape) -> Self {
        GeneratorConfig { n, seed, shape, numbering: Numbering::Valid }
    }

    pub fn scrambled(self) -> Self {
        GeneratorConfig { numbering: Numbering::Scrambled, ..self }
    }
}

fn below(rng: &mut ChaCha8Rng, k: usize) -> usize {
    rng.random_range(0..k as u64) as usize
}

/// Parent vector (`parents[k - 1]` is the parent of `k`) for a valid
/// numbering.
pub fn generate_parents(n: usize, shape: Shape, rng: &mut ChaCha8Rng) -> Vec<usize> {
    match shape {
        Shape::UniformRandom => (1..=n).map(|k| below(rng, k)).collect(),
        Shape::Path => (0..n).collect(),
        Shape::Star => vec![0; n],
        Shape::Caterpillar => {
            let spine = n.div_ceil(2);
            (1..=n)
                .map(|k| if k <= spine { k - 1 } else { 1 + below(rng, spine) })
                .collect()
        }
    }
}

/// Panics if `n == 0`.
pub fn generate(config: &GeneratorConfig) -> RawGraph {
    assert!(config.n >= 1, "a tree needs at least one non-datum node");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let parents = generate_parents(config.n, config.shape, &mut rng);
    let edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(idx, &p)| (p, idx + 1)).collect();
    match config.numbering {
        Numbering::Valid => RawGraph::new(0, edges),
        Numbering::Scrambled => {
            let mut labels: Vec<usize> = (0..=config.n).collect();
            labels.shuffle(&mut rng);
            let mut edges: Vec<(usize, usize)> = edges
                .into_iter()
                .map(|(u, v)| {
                    let (a, b) = (labels[u], labels[v]);
                    if rng.random_bool(0.5) {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            edges.shuffle(&mut rng);
            RawGraph::new(labels[0], edges)
        }
    }
}

/// Every parent vector with `parents[k - 1] < k`, i.e. every tree on
/// `0..=n` with a valid numbering, in lexicographic order. There are `n!`.
pub fn all_forward_trees(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (n >= 1).then(|| vec![0usize; n]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        for k in (0..n).rev() {
            if succ[k] < k {
                succ[k] += 1;
                next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(current)
    })
}
