use crate::error::{precondition, Result};
use crate::geometry::vector::Vec2;
use crate::scalar::{Real, Scalar};

/// A nonzero vector read as a point of the unit sphere. Stored unnormalized,
/// so exact rational directions stay exact.
#[derive(Debug, Clone)]
pub struct Direction<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Direction<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return precondition("a direction needs at least two coordinates");
        }
        if coords.iter().all(|c| c.is_zero()) {
            return precondition("zero vector is not a direction");
        }
        Ok(Direction { coords })
    }

    pub fn from_vec2(v: &Vec2<T>) -> Result<Self> {
        Direction::new(vec![v.x.clone(), v.y.clone()])
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Planar view; panics if the direction is not two-dimensional.
    pub fn as_vec2(&self) -> Vec2<T> {
        assert_eq!(self.dim(), 2, "expected a planar direction");
        Vec2::new(self.coords[0].clone(), self.coords[1].clone())
    }

    pub fn scaled(&self, k: &T) -> Result<Self> {
        if !k.is_positive() {
            return precondition("directions may only be scaled by positive factors");
        }
        Ok(Direction {
            coords: self.coords.iter().map(|c| c.clone() * k.clone()).collect(),
        })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(crate::scalar::to_f64).collect()
    }

    pub fn to_real<R: Real>(&self) -> Vec<R> {
        self.coords
            .iter()
            .map(|c| R::lit(crate::scalar::to_f64(c)))
            .collect()
    }
}

/// Equality as points of the sphere: one is a positive multiple of the other.
impl<T: Scalar> PartialEq for Direction<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let a = &self.coords;
        let b = &other.coords;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i].clone() * b[j].clone() != a[j].clone() * b[i].clone() {
                    return false;
                }
            }
        }
        let dot = a
            .iter()
            .zip(b)
            .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
        dot.is_positive()
    }
}

/// A multiset of directions; multiplicities are positive.
#[derive(Debug, Clone)]
pub struct DirectionMultiset<T> {
    entries: Vec<(Direction<T>, usize)>,
}

impl<T: Scalar> PartialEq for DirectionMultiset<T> {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl<T: Scalar> Default for DirectionMultiset<T> {
    fn default() -> Self {
        DirectionMultiset { entries: Vec::new() }
    }
}

impl<T: Scalar> DirectionMultiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` copies of `dir`, merging with an equal direction if present.
    pub fn push(&mut self, dir: Direction<T>, mult: usize) {
        if mult == 0 {
            return;
        }
        if let Some(e) = self.entries.iter_mut().find(|(d, _)| *d == dir) {
            e.1 += mult;
        } else {
            self.entries.push((dir, mult));
        }
    }

    /// Adds copies without merging, keeping the insertion layout.
    pub fn push_distinct(&mut self, dir: Direction<T>, mult: usize) {
        if mult > 0 {
            self.entries.push((dir, mult));
        }
    }

    pub fn entries(&self) -> &[(Direction<T>, usize)] {
        &self.entries
    }

    /// `|U|`, the sum of multiplicities.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.entries.first().map(|(d, _)| d.dim())
    }

    /// Each direction repeated by its multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = &Direction<T>> {
        self.entries
            .iter()
            .flat_map(|(d, k)| std::iter::repeat_n(d, *k))
    }

    /// Unit float vectors with multiplicities.
    pub fn unit_vectors<R: Real>(&self) -> Vec<(Vec<R>, usize)> {
        self.entries
            .iter()
            .map(|(d, k)| (crate::geometry::vector::normalized(&d.to_real::<R>()), *k))
            .collect()
    }
}

impl<T: Scalar> FromIterator<Direction<T>> for DirectionMultiset<T> {
    fn from_iter<I: IntoIterator<Item = Direction<T>>>(iter: I) -> Self {
        let mut set = DirectionMultiset::new();
        for d in iter {
            set.push(d, 1);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    #[test]
    fn equality_up_to_positive_scaling() {
        let a = Direction::new(vec![r(1), r(2), r(-1)]).unwrap();
        let b = Direction::new(vec![r(3), r(6), r(-3)]).unwrap();
        let c = Direction::new(vec![r(-1), r(-2), r(1)]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(Direction::new(vec![r(0), r(0)]).is_err());
        assert!(a.scaled(&r(-2)).is_err());
    }

    #[test]
    fn multiset_merges_equal_directions() {
        let mut u = DirectionMultiset::new();
        u.push(Direction::new(vec![1.0, 0.0]).unwrap(), 2);
        u.push(Direction::new(vec![2.0, 0.0]).unwrap(), 1);
        u.push(Direction::new(vec![0.0, 1.0]).unwrap(), 1);
        assert_eq!(u.entries().len(), 2);
        assert_eq!(u.total(), 4);
        assert_eq!(u.expanded().count(), 4);
    }
}
