use std::fmt;

use crate::error::{Error, Result};

/// Finite ordered set of distinct atom labels. The order is fixed at
/// construction and gives every subset its canonical bitmask indexing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroundSet {
    atoms: Vec<String>,
}

impl GroundSet {
    /// At least one atom, at most 64 (bitmask width), labels distinct.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = labels.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        if atoms.len() > 64 {
            return Err(Error::TooManyAtoms);
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(Error::DuplicateAtom(a.clone()));
            }
        }
        Ok(GroundSet { atoms })
    }

    /// Ground set `{1, 2, ..., n}`.
    pub fn numbered(n: usize) -> Result<Self> {
        GroundSet::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, index: usize) -> &str {
        &self.atoms[index]
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == label)
    }

    /// The whole ground set as a subset.
    pub fn full(&self) -> Subset {
        if self.len() == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << self.len()) - 1)
        }
    }

    /// Validates that `s` only uses atoms of this ground set.
    pub fn check(&self, s: Subset) -> Result<Subset> {
        if s.0 & !self.full().0 != 0 {
            Err(Error::SubsetOutOfRange)
        } else {
            Ok(s)
        }
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(!s.0 & self.full().0)
    }

    pub fn subset_of_labels<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u64;
        for l in labels {
            let idx = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
            bits |= 1 << idx;
        }
        Ok(Subset(bits))
    }

    pub fn labels_of(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.atoms[i].clone()).collect()
    }

    /// All `2^n` subsets, the empty set first.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        let count: u128 = 1u128 << self.len();
        (0..count).map(|b| Subset(b as u64))
    }

    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.subsets().skip(1)
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.atoms.join(", "))
    }
}

/// Subset of a ground set, stored as a bitmask over atom indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn singleton(index: usize) -> Self {
        Subset(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0;
        for i in indices {
            bits |= 1u64 << i;
        }
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Atom indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Result of [`atoms_from_generators`]: the partition of a base set into the
/// atoms of the algebra generated by a list of subsets.
#[derive(Clone, Debug)]
pub struct AtomPartition {
    /// Ground set the generators live on.
    pub base: GroundSet,
    /// Partition blocks, ordered by their smallest base atom.
    pub blocks: Vec<Subset>,
    /// One atom per block, labelled by the base labels joined with `|`.
    pub quotient: GroundSet,
    /// For each base atom index, the index of its block.
    pub atom_of: Vec<usize>,
}

/// Computes the atoms of the set algebra generated by `generators` inside
/// the powerset of `base`: the coarsest partition of `base` on which every
/// generator is a union of blocks. Two base points share a block exactly
/// when they lie in the same generators. An empty generator list yields the
/// single block `base`.
pub fn atoms_from_generators(base: &GroundSet, generators: &[Subset]) -> Result<AtomPartition> {
    for g in generators {
        base.check(*g)?;
    }
    let n = base.len();
    let mut blocks: Vec<Subset> = Vec::new();
    let mut signatures: Vec<Vec<bool>> = Vec::new();
    let mut atom_of = Vec::with_capacity(n);
    for i in 0..n {
        let sig: Vec<bool> = generators.iter().map(|g| g.contains(i)).collect();
        match signatures.iter().position(|s| *s == sig) {
            Some(b) => {
                blocks[b] = blocks[b].union(Subset::singleton(i));
                atom_of.push(b);
            }
            None => {
                atom_of.push(blocks.len());
                blocks.push(Subset::singleton(i));
                signatures.push(sig);
            }
        }
    }
    let labels: Vec<String> = blocks
        .iter()
        .map(|b| base.labels_of(*b).join("|"))
        .collect();
    let quotient = GroundSet::new(labels)?;
    Ok(AtomPartition {
        base: base.clone(),
        blocks,
        quotient,
        atom_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(n: usize) -> GroundSet {
        GroundSet::numbered(n).unwrap()
    }

    #[test]
    fn construction_invariants() {
        assert_eq!(GroundSet::new(Vec::<String>::new()).unwrap_err(), Error::EmptyGroundSet);
        assert_eq!(
            GroundSet::new(["a", "b", "a"]).unwrap_err(),
            Error::DuplicateAtom("a".into())
        );
        let g = gs(3);
        assert_eq!(g.full().bits(), 0b111);
        assert!(g.check(Subset::from_bits(0b1000)).is_err());
    }

    #[test]
    fn subset_algebra() {
        let a = Subset::from_indices([0, 1]);
        let b = Subset::from_indices([1, 2]);
        assert_eq!(a.union(b), Subset::from_indices([0, 1, 2]));
        assert_eq!(a.intersect(b), Subset::singleton(1));
        assert_eq!(a.minus(b), Subset::singleton(0));
        assert!(Subset::singleton(1).is_subset_of(a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    /// Independent check: two base points belong to the same block exactly
    /// when no generator separates them.
    fn same_block_oracle(generators: &[Subset], i: usize, j: usize) -> bool {
        generators
            .iter()
            .all(|g| g.contains(i) == g.contains(j))
    }

    #[test]
    fn atoms_two_overlapping_generators() {
        let base = gs(4);
        let g1 = base.subset_of_labels(["1", "2"]).unwrap();
        let g2 = base.subset_of_labels(["2", "3"]).unwrap();
        let part = atoms_from_generators(&base, &[g1, g2]).unwrap();
        // Expected blocks verified against the pairwise separation oracle.
        for i in 0..4 {
            for j in 0..4 {
                let same = part.atom_of[i] == part.atom_of[j];
                assert_eq!(same, same_block_oracle(&[g1, g2], i, j));
            }
        }
        assert_eq!(part.blocks.len(), 4);
        assert_eq!(
            part.blocks,
            vec![
                Subset::singleton(0),
                Subset::singleton(1),
                Subset::singleton(2),
                Subset::singleton(3)
            ]
        );
    }

    #[test]
    fn atoms_single_generator() {
        let base = gs(4);
        let g1 = base.subset_of_labels(["1", "2"]).unwrap();
        let part = atoms_from_generators(&base, &[g1]).unwrap();
        assert_eq!(part.blocks, vec![Subset::from_indices([0, 1]), Subset::from_indices([2, 3])]);
        assert_eq!(part.quotient.atom(0), "1|2");
    }

    #[test]
    fn atoms_no_generators() {
        let base = gs(2);
        let part = atoms_from_generators(&base, &[]).unwrap();
        assert_eq!(part.blocks, vec![base.full()]);
        assert_eq!(part.atom_of, vec![0, 0]);
    }

    #[test]
    fn atoms_partition_property() {
        // Blocks partition the base; each generator is a union of blocks.
        let base = gs(5);
        let gens = [
            Subset::from_indices([0, 2, 4]),
            Subset::from_indices([1, 2]),
            Subset::from_indices([0, 1, 2, 3]),
        ];
        let part = atoms_from_generators(&base, &gens).unwrap();
        let mut seen = Subset::EMPTY;
        for b in &part.blocks {
            assert!(seen.intersect(*b).is_empty());
            seen = seen.union(*b);
        }
        assert_eq!(seen, base.full());
        for g in &gens {
            let rebuilt = part
                .blocks
                .iter()
                .filter(|b| b.is_subset_of(*g))
                .fold(Subset::EMPTY, |acc, b| acc.union(*b));
            assert_eq!(rebuilt, *g);
        }
    }
}
