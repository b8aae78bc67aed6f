use crate::error::{Error, Result};
use crate::model::{GroundSet, Subset};

/// Proper-or-not ideal of sets in principal representation: the family of
/// all subsets of a single maximal element. Over a finite ground set every
/// union-closed, down-closed collection is of this form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    ground: GroundSet,
    generator: Subset,
}

impl Ideal {
    /// The ideal `{A : A ⊆ generator}`.
    pub fn principal(ground: GroundSet, generator: Subset) -> Result<Self> {
        ground.check(generator)?;
        Ok(Ideal { ground, generator })
    }

    /// The trivial ideal `{∅}`.
    pub fn trivial(ground: GroundSet) -> Self {
        Ideal {
            ground,
            generator: Subset::EMPTY,
        }
    }

    /// Validates an explicitly enumerated collection of sets as an ideal:
    /// down-closed, union-closed, proper (the ground set is absent) and
    /// equal to the full powerset of its union. Returns the principal form.
    pub fn validate_explicit(ground: &GroundSet, members: &[Subset]) -> Result<Self> {
        for m in members {
            ground.check(*m)?;
        }
        // Down-closure: every subset of every member is a member.
        for m in members {
            let mut sub = m.bits();
            loop {
                let s = Subset::from_bits(sub);
                if !members.contains(&s) {
                    return Err(Error::NotDownClosed {
                        member: ground.labels_of(*m),
                        missing: ground.labels_of(s),
                    });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m.bits();
            }
        }
        // Union-closure over pairs.
        for a in members {
            for b in members {
                let u = a.union(*b);
                if !members.contains(&u) {
                    return Err(Error::NotUnionClosed {
                        left: ground.labels_of(*a),
                        right: ground.labels_of(*b),
                    });
                }
            }
        }
        if members.contains(&ground.full()) {
            return Err(Error::NotProper);
        }
        let generator = members
            .iter()
            .fold(Subset::EMPTY, |acc, m| acc.union(*m));
        // The closure checks above force the collection to be the powerset
        // of its union once it is nonempty; an empty enumeration still lacks
        // the empty set and is caught here.
        let mut sub = generator.bits();
        loop {
            let s = Subset::from_bits(sub);
            if !members.contains(&s) {
                return Err(Error::NotPrincipalComplete {
                    missing: ground.labels_of(s),
                });
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & generator.bits();
        }
        Ideal::principal(ground.clone(), generator)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn generator(&self) -> Subset {
        self.generator
    }

    /// Proper means the ideal does not contain the whole ground set.
    pub fn is_proper(&self) -> bool {
        self.generator != self.ground.full()
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.is_subset_of(self.generator)
    }

    /// The complement of the generator: where sets must live to escape the
    /// ideal.
    pub fn co_support(&self) -> Subset {
        self.ground.complement(self.generator)
    }

    /// Every member of the ideal, i.e. all subsets of the generator.
    pub fn members(&self) -> Vec<Subset> {
        let mut out = Vec::new();
        let gen = self.generator.bits();
        let mut sub = gen;
        loop {
            out.push(Subset::from_bits(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & gen;
        }
        out.reverse();
        out
    }
}
