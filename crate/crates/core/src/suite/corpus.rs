use crate::error::Result;
use crate::graph::generators::Kind;
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub name: String,
    pub kind: Option<Kind>,
    pub graph: Graph,
    /// Seed for the item's own random sampling.
    pub seed: u64,
}

/// SplitMix64 mixing of the master seed with an item index.
pub fn item_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn from_kinds(kinds: &[Kind], master: u64) -> Result<Vec<CorpusItem>> {
    kinds
        .iter()
        .enumerate()
        .map(|(i, k)| {
            Ok(CorpusItem { name: k.to_string(), kind: Some(k.clone()), graph: k.generate()?, seed: item_seed(master, i as u64) })
        })
        .collect()
}

pub const ER_PROBABILITIES: [f64; 3] = [0.3, 0.5, 0.7];

/// Named families plus 200 Erdős–Rényi graphs, 100 random contractible
/// graphs and 20 random trees on 4 to 12 vertices.
pub fn default_kinds(master: u64) -> Vec<Kind> {
    let mut kinds = Vec::new();
    kinds.extend((1..=6).map(Kind::Complete));
    kinds.extend((3..=10).map(Kind::Cycle));
    kinds.extend((2..=8).map(Kind::Path));
    kinds.extend((1..=6).map(Kind::Star));
    kinds.extend((4..=8).map(Kind::Wheel));
    kinds.push(Kind::Octahedron);
    kinds.push(Kind::Icosahedron);
    kinds.push(Kind::CrossPolytope(3));
    for i in 0..200u64 {
        let n = 4 + (i % 9) as usize;
        let p = ER_PROBABILITIES[((i / 9) % 3) as usize];
        kinds.push(Kind::RandomEr { n, p, seed: item_seed(master, 10_000 + i) });
    }
    for i in 0..100u64 {
        kinds.push(Kind::RandomContractible { n: 4 + (i % 9) as usize, seed: item_seed(master, 20_000 + i) });
    }
    for i in 0..20u64 {
        kinds.push(Kind::RandomTree { n: 4 + (i % 9) as usize, seed: item_seed(master, 30_000 + i) });
    }
    kinds
}

pub fn default_corpus(master: u64) -> Result<Vec<CorpusItem>> {
    from_kinds(&default_kinds(master), master)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_shape() {
        let c = default_corpus(1).unwrap();
        assert_eq!(c.len(), 355);
        assert_eq!(c.iter().filter(|i| i.name.starts_with("random_er")).count(), 200);
        assert!(c.iter().all(|i| i.graph.n() <= 12));
        let again = default_corpus(1).unwrap();
        assert!(c.iter().zip(&again).all(|(a, b)| a.graph == b.graph && a.seed == b.seed));
        assert_ne!(default_corpus(2).unwrap()[40].graph, c[40].graph);
    }
}
