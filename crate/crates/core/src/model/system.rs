use crate::error::{Error, Result};
use crate::model::{GroundSet, Subset};

/// A finite family of nonempty subsets of a common ground set — the object
/// whose intersection number is computed. Duplicate members are collapsed at
/// construction (they change nothing downstream); the family may be empty,
/// but intersection-number queries reject empty families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetSystem {
    ground: GroundSet,
    family: Vec<Subset>,
}

impl SetSystem {
    pub fn new(ground: GroundSet, members: Vec<Subset>) -> Result<Self> {
        let mut family = Vec::with_capacity(members.len());
        for m in members {
            ground.check(m)?;
            if m.is_empty() {
                return Err(Error::EmptySetInFamily);
            }
            if !family.contains(&m) {
                family.push(m);
            }
        }
        Ok(SetSystem { ground, family })
    }

    pub fn from_labels<I, J, S>(ground: GroundSet, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let subsets = members
            .into_iter()
            .map(|labels| ground.subset_of_labels(labels))
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(ground, subsets)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn family(&self) -> &[Subset] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn member(&self, index: usize) -> Subset {
        self.family[index]
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.family.contains(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_validation() {
        let g = GroundSet::numbered(3).unwrap();
        let a = Subset::from_indices([0, 1]);
        let b = Subset::from_indices([1, 2]);
        let sys = SetSystem::new(g.clone(), vec![a, b, a]).unwrap();
        assert_eq!(sys.family(), &[a, b]);
        assert_eq!(
            SetSystem::new(g.clone(), vec![Subset::EMPTY]).unwrap_err(),
            Error::EmptySetInFamily
        );
        assert!(SetSystem::new(g, vec![Subset::from_bits(0b1000)]).is_err());
    }
}
