//! Dense max-plus matrices and vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tropical::Tropical;

/// Row-major dense matrix over the max-plus semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaxPlusMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<Tropical<S>>,
}

/// Dense max-plus column vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaxPlusVector<S> {
    entries: Vec<Tropical<S>>,
}

impl<S: Scalar> MaxPlusMatrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Tropical<S>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries given for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(MaxPlusMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Tropical<S>>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != n_cols) {
            return Err(Error::Dimension("rows have different lengths".into()));
        }
        Self::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integers, with `None` for bottom.
    pub fn from_ints(rows: &[&[Option<i64>]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|entry| entry.map_or(Tropical::Bottom, Tropical::int))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn bottom(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![Tropical::Bottom; rows * cols])
    }

    /// `[lambda]_n`: `lambda` on the diagonal, bottom elsewhere.
    pub fn diagonal(n: usize, lambda: Tropical<S>) -> Result<Self> {
        let mut matrix = Self::bottom(n, n)?;
        for i in 0..n {
            matrix.set(i, i, lambda.clone());
        }
        Ok(matrix)
    }

    /// The multiplicative identity `[0]_n`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::diagonal(n, Tropical::zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Tropical<S> {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Tropical<S>) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Tropical<S>] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[Tropical<S>] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// `(A ⊗ B)_{ij} = max_k A_{ik} + B_{kj}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut best = Tropical::Bottom;
                for k in 0..self.cols {
                    let candidate = self.get(i, k).otimes(other.get(k, j));
                    if candidate > best {
                        best = candidate;
                    }
                }
                entries.push(best);
            }
        }
        Ok(MaxPlusMatrix { rows: self.rows, cols: other.cols, entries })
    }

    pub fn mul_vec(&self, vector: &MaxPlusVector<S>) -> Result<MaxPlusVector<S>> {
        if self.cols != vector.dim() {
            return Err(Error::Dimension(format!(
                "cannot apply a {}x{} matrix to a vector of dimension {}",
                self.rows,
                self.cols,
                vector.dim()
            )));
        }
        let entries = (0..self.rows)
            .map(|i| {
                let mut best = Tropical::Bottom;
                for (a, x) in self.row(i).iter().zip(vector.entries()) {
                    let candidate = a.otimes(x);
                    if candidate > best {
                        best = candidate;
                    }
                }
                best
            })
            .collect();
        Ok(MaxPlusVector { entries })
    }

    /// `A^{⊗n}` with `A^{⊗0} = [0]_N`.
    pub fn power(&self, exponent: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut result = Self::identity(self.rows)?;
        let mut base = self.clone();
        let mut remaining = exponent;
        while remaining > 0 {
            if remaining & 1 == 1 {
                result = result.mul(&base)?;
            }
            remaining >>= 1;
            if remaining > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Homothety `lambda ⊗ A`: adds `lambda` to every finite entry.
    pub fn scale(&self, lambda: &Tropical<S>) -> Result<Self> {
        let lambda = lambda
            .finite()
            .ok_or_else(|| Error::InvalidInput("homothety by bottom".into()))?;
        Ok(self.shifted(lambda))
    }

    pub fn shifted(&self, lambda: &S) -> Self {
        MaxPlusMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|entry| entry.shift(lambda)).collect(),
        }
    }

    /// Entrywise negation of finite entries, bottom kept.
    ///
    /// A min-plus matrix whose `+inf` entries are stored as bottom maps onto the
    /// max-plus matrix `-A` this way.
    pub fn negated(&self) -> Self {
        MaxPlusMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Tropical::negated).collect(),
        }
    }

    pub fn is_finite_everywhere(&self) -> bool {
        self.entries.iter().all(Tropical::is_finite)
    }
}

impl<S: Scalar> MaxPlusVector<S> {
    pub fn new(entries: Vec<Tropical<S>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension("vector dimension must be positive".into()));
        }
        Ok(MaxPlusVector { entries })
    }

    pub fn from_ints(values: &[Option<i64>]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|value| value.map_or(Tropical::Bottom, Tropical::int))
                .collect(),
        )
    }

    pub fn constant(dim: usize, value: Tropical<S>) -> Result<Self> {
        Self::new(vec![value; dim])
    }

    /// `e^j`: zero at `j`, bottom elsewhere (0-based `j`).
    pub fn unit(dim: usize, j: usize) -> Result<Self> {
        if j >= dim {
            return Err(Error::InvalidInput(format!(
                "node index {j} out of range for dimension {dim}"
            )));
        }
        let mut entries = vec![Tropical::Bottom; dim];
        entries[j] = Tropical::zero();
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Tropical<S> {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Tropical<S>] {
        &self.entries
    }

    pub fn is_all_bottom(&self) -> bool {
        self.entries.iter().all(Tropical::is_bottom)
    }

    pub fn is_finite_everywhere(&self) -> bool {
        self.entries.iter().all(Tropical::is_finite)
    }

    pub fn shifted(&self, lambda: &S) -> Self {
        MaxPlusVector { entries: self.entries.iter().map(|x| x.shift(lambda)).collect() }
    }

    pub fn negated(&self) -> Self {
        MaxPlusVector { entries: self.entries.iter().map(Tropical::negated).collect() }
    }

    /// `max_i v_i - min_i v_i`; `None` if some entry is bottom.
    pub fn spread(&self) -> Option<S> {
        let mut values = self.entries.iter().map(Tropical::finite);
        let first = values.next()??.clone();
        let (mut lo, mut hi) = (first.clone(), first);
        for value in values {
            let value = value?;
            if *value < lo {
                lo = value.clone();
            }
            if *value > hi {
                hi = value.clone();
            }
        }
        Some(hi - lo)
    }
}

impl<S: Scalar> fmt::Display for MaxPlusMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Display for MaxPlusVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", entries.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type M = MaxPlusMatrix<Rational>;
    type V = MaxPlusVector<Rational>;

    fn a1() -> M {
        M::from_ints(&[&[Some(-1), Some(0)], &[Some(0), None]]).unwrap()
    }

    fn a2() -> M {
        M::from_ints(&[&[Some(0), Some(-1)], &[Some(0), Some(-1)]]).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = a1();
        let id = M::identity(2).unwrap();
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(id.mul(&a).unwrap(), a);
    }

    #[test]
    fn squares_and_cubes_of_a1() {
        let a = a1();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, M::from_ints(&[&[Some(0), Some(-1)], &[Some(-1), Some(0)]]).unwrap());
        let cube = sq.mul(&a).unwrap();
        assert_eq!(cube, M::from_ints(&[&[Some(-1), Some(0)], &[Some(0), Some(-1)]]).unwrap());
        assert_eq!(a.power(2).unwrap(), sq);
        assert_eq!(a.power(3).unwrap(), cube);
    }

    #[test]
    fn power_zero_and_idempotent() {
        assert_eq!(a1().power(0).unwrap(), M::identity(2).unwrap());
        assert_eq!(a2().power(2).unwrap(), a2());
    }

    #[test]
    fn mat_vec_examples() {
        let a = a2();
        let all_bottom = V::constant(2, Tropical::Bottom).unwrap();
        assert!(a.mul_vec(&all_bottom).unwrap().is_all_bottom());
        let v = V::from_ints(&[Some(0), Some(0)]).unwrap();
        assert_eq!(a.mul_vec(&v).unwrap(), v);
        let w = V::from_ints(&[Some(0), Some(-1)]).unwrap();
        assert_eq!(a.mul_vec(&w).unwrap(), v);
    }

    #[test]
    fn scale_examples() {
        let a = a1();
        assert_eq!(a.scale(&Tropical::zero()).unwrap(), a);
        assert_eq!(
            a.scale(&Tropical::int(1)).unwrap(),
            M::from_ints(&[&[Some(0), Some(1)], &[Some(1), None]]).unwrap()
        );
        let lambda = Rational::new(7, 3);
        let back = a.scale(&Tropical::Finite(lambda)).unwrap().scale(&Tropical::Finite(-lambda));
        assert_eq!(back.unwrap(), a);
        assert!(matches!(a.scale(&Tropical::Bottom), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn unit_vectors() {
        assert_eq!(V::unit(2, 0).unwrap(), V::from_ints(&[Some(0), None]).unwrap());
        assert_eq!(V::unit(2, 1).unwrap(), V::from_ints(&[None, Some(0)]).unwrap());
        assert_eq!(V::unit(1, 0).unwrap(), V::from_ints(&[Some(0)]).unwrap());
        assert!(V::unit(2, 2).is_err());
    }

    #[test]
    fn dimension_errors() {
        let a = a1();
        let wide = M::bottom(2, 3).unwrap();
        assert!(wide.mul(&a).is_err());
        assert!(wide.power(2).is_err());
        assert!(a.mul_vec(&V::unit(3, 0).unwrap()).is_err());
        assert!(M::new(2, 2, vec![Tropical::zero(); 3]).is_err());
    }

    #[test]
    fn spread_of_vectors() {
        let v = V::from_ints(&[Some(3), Some(-2), Some(1)]).unwrap();
        assert_eq!(v.spread(), Some(Rational::from_integer(5)));
        assert_eq!(V::unit(2, 0).unwrap().spread(), None);
    }
}
