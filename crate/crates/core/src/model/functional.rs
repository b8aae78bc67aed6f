use crate::error::{Error, Result};
use crate::model::{GroundSet, Ideal, Measure, SimpleFunction, Subset};
use crate::rational::Rational;

/// Monotone sublinear functional given by finitely many nonnegative
/// measures: `π(f) = maxᵢ mᵢ(f)`. Monotonicity and sublinearity are
/// automatic from this representation, and the null collection
/// `Neg(π) = {A : π(1_A) = 0}` is the principal ideal of the atoms missed
/// by every vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexFunctional {
    ground: GroundSet,
    vertices: Vec<Measure>,
}

impl VertexFunctional {
    pub fn new(ground: GroundSet, vertices: Vec<Measure>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::NoVertices);
        }
        for v in &vertices {
            if *v.ground() != ground {
                return Err(Error::GroundSetMismatch);
            }
        }
        Ok(VertexFunctional { ground, vertices })
    }

    /// The functional `max_ω f(ω)` — vertices are all point masses. Feeding
    /// it to the weighted intersection number recovers the plain one.
    pub fn all_point_masses(ground: GroundSet) -> Self {
        let vertices = (0..ground.len())
            .map(|i| Measure::point_mass(ground.clone(), i))
            .collect();
        VertexFunctional { ground, vertices }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn vertices(&self) -> &[Measure] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn evaluate(&self, f: &SimpleFunction) -> Result<Rational> {
        let mut best: Option<Rational> = None;
        for v in &self.vertices {
            let x = v.of_function(f)?;
            best = Some(match best {
                None => x,
                Some(b) => b.max(x),
            });
        }
        Ok(best.expect("at least one vertex"))
    }

    /// `π(1_A)` without building the indicator function.
    pub fn of_subset(&self, s: Subset) -> Rational {
        self.vertices
            .iter()
            .map(|v| v.of_subset(s))
            .reduce(Rational::max)
            .expect("at least one vertex")
    }

    /// The ideal `Neg(π)`: all sets missed by every vertex.
    pub fn neg_ideal(&self) -> Ideal {
        let union_support = self
            .vertices
            .iter()
            .fold(Subset::EMPTY, |acc, v| acc.union(v.support()));
        Ideal::principal(self.ground.clone(), self.ground.complement(union_support))
            .expect("complement in range")
    }

    /// Totals `π` assigns to the constant one, per vertex.
    pub fn totals(&self) -> Vec<Rational> {
        self.vertices.iter().map(Measure::total).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation_is_max_over_vertices() {
        let g = GroundSet::numbered(2).unwrap();
        let pi = VertexFunctional::new(
            g.clone(),
            vec![Measure::point_mass(g.clone(), 0), Measure::point_mass(g.clone(), 1)],
        )
        .unwrap();
        let f = SimpleFunction::new(g, vec![r("1/3"), r("2/3")]).unwrap();
        assert_eq!(pi.evaluate(&f).unwrap(), r("2/3"));
        assert_eq!(pi.of_subset(Subset::singleton(0)), r("1"));
    }

    #[test]
    fn neg_ideal_is_missed_atoms() {
        let g = GroundSet::numbered(3).unwrap();
        let pi = VertexFunctional::new(
            g.clone(),
            vec![Measure::point_mass(g.clone(), 0), Measure::point_mass(g, 1)],
        )
        .unwrap();
        assert_eq!(pi.neg_ideal().generator(), Subset::singleton(2));
    }

    #[test]
    fn sublinearity_spot_check() {
        // π(f+g) ≤ π(f) + π(g) and π(cf) = cπ(f) for c ≥ 0.
        let g = GroundSet::numbered(3).unwrap();
        let m1 = Measure::new(g.clone(), vec![r("1/2"), r("1/2"), r("0")]).unwrap();
        let m2 = Measure::new(g.clone(), vec![r("0"), r("1/3"), r("2/3")]).unwrap();
        let pi = VertexFunctional::new(g.clone(), vec![m1, m2]).unwrap();
        let f = SimpleFunction::new(g.clone(), vec![r("1"), r("-1"), r("2")]).unwrap();
        let h = SimpleFunction::new(g, vec![r("0"), r("3"), r("-1")]).unwrap();
        let sum = f.add(&h).unwrap();
        assert!(pi.evaluate(&sum).unwrap() <= pi.evaluate(&f).unwrap() + pi.evaluate(&h).unwrap());
        let c = r("5/2");
        assert_eq!(
            pi.evaluate(&f.scale(&c)).unwrap(),
            pi.evaluate(&f).unwrap() * c
        );
    }
}
