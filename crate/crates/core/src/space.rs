//! Finite ultrametric spaces with exact distances.
//!
//! A [`Space`] stores its distance matrix as ranks into the sorted spectrum,
//! so every comparison in the hot paths is an integer comparison.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("a space needs at least one point")]
    Empty,
    #[error("matrix is {rows}x{cols} but {points} point ids were given")]
    DimensionMismatch { points: usize, rows: usize, cols: usize },
    #[error("duplicate point id `{0}`")]
    DuplicatePoint(String),
    #[error("d({0},{1}) != d({1},{0})")]
    NotSymmetric(String, String),
    #[error("d({0},{0}) is not zero")]
    DiagonalNonzero(String),
    #[error("d({0},{1}) is zero for distinct points")]
    OffDiagonalZero(String, String),
    #[error("d({0},{1}) is negative")]
    NegativeDistance(String, String),
    #[error("strong triangle inequality fails: d({0},{1}) > max(d({0},{2}), d({2},{1}))")]
    StrongTriangleViolation(String, String, String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("empty subset")]
    EmptySubset,
}

/// A validated finite ultrametric space.
#[derive(Clone, PartialEq, Eq)]
pub struct Space {
    points: Vec<String>,
    index: HashMap<String, usize>,
    /// Sorted distinct distances; `spectrum[0]` is zero.
    spectrum: Vec<Rational>,
    /// Row-major `n * n` matrix of indices into `spectrum`.
    ranks: Vec<u32>,
}

impl std::fmt::Debug for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for i in 0..self.len() {
            let row: Vec<String> = (0..self.len()).map(|j| self.dist(i, j).to_string()).collect();
            m.entry(&self.points[i], &row.join(" "));
        }
        m.finish()
    }
}

/// Sorted distinct distances of a space, starting at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum(pub Vec<Rational>);

/// Distances seen from one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpectrum {
    pub center: String,
    pub values: Vec<Rational>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }
}

fn index_points(points: &[String]) -> Result<HashMap<String, usize>, SpaceError> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(SpaceError::DuplicatePoint(p.clone()));
        }
    }
    Ok(index)
}

/// Checks the ultrametric axioms and builds a [`Space`].
///
/// Errors name the offending points. Triangle violations report the first
/// triple `(x, y, z)` with `x < y` in point order for which
/// `d(x,y) > max(d(x,z), d(z,y))`.
pub fn validate_space(matrix: &[Vec<Rational>], points: &[String]) -> Result<Space, SpaceError> {
    let n = points.len();
    if n == 0 {
        return Err(SpaceError::Empty);
    }
    if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
        let cols = matrix.iter().map(Vec::len).find(|&c| c != n).unwrap_or(n);
        return Err(SpaceError::DimensionMismatch {
            points: n,
            rows: matrix.len(),
            cols,
        });
    }
    let index = index_points(points)?;
    let p = |i: usize| points[i].clone();
    for (i, row) in matrix.iter().enumerate() {
        if !row[i].is_zero() {
            return Err(SpaceError::DiagonalNonzero(p(i)));
        }
    }
    for (i, row) in matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            if v.is_negative() {
                return Err(SpaceError::NegativeDistance(p(i), p(j)));
            }
            if v.is_zero() {
                return Err(SpaceError::OffDiagonalZero(p(i), p(j)));
            }
        }
    }
    for (i, row) in matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate().skip(i + 1) {
            if *v != matrix[j][i] {
                return Err(SpaceError::NotSymmetric(p(i), p(j)));
            }
        }
    }

    let spectrum: Vec<Rational> = matrix
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rank_of: HashMap<&Rational, u32> = spectrum.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let ranks: Vec<u32> = matrix.iter().flatten().map(|v| rank_of[v]).collect();

    if let Some((x, y, z)) = first_triangle_violation(n, &ranks) {
        return Err(SpaceError::StrongTriangleViolation(p(x), p(y), p(z)));
    }
    Ok(Space {
        points: points.to_vec(),
        index,
        spectrum,
        ranks,
    })
}

fn first_triangle_violation(n: usize, ranks: &[u32]) -> Option<(usize, usize, usize)> {
    for x in 0..n {
        let rx = &ranks[x * n..(x + 1) * n];
        for y in x + 1..n {
            let ry = &ranks[y * n..(y + 1) * n];
            let dxy = rx[y];
            if let Some(z) = (0..n).find(|&z| dxy > rx[z].max(ry[z])) {
                return Some((x, y, z));
            }
        }
    }
    None
}

impl Space {
    /// Builds a space from a rank matrix that is already known to be ultrametric.
    pub(crate) fn from_ranks_unchecked(points: Vec<String>, spectrum: Vec<Rational>, ranks: Vec<u32>) -> Space {
        debug_assert_eq!(ranks.len(), points.len() * points.len());
        let index = index_points(&points).expect("distinct point ids");
        // Drop unused spectrum values so that `spectrum` is exactly Sp(X).
        let mut used = vec![false; spectrum.len()];
        for &r in &ranks {
            used[r as usize] = true;
        }
        if used.iter().all(|&u| u) {
            return Space {
                points,
                index,
                spectrum,
                ranks,
            };
        }
        let mut remap = vec![0u32; spectrum.len()];
        let mut kept = Vec::new();
        for (i, v) in spectrum.into_iter().enumerate() {
            if used[i] {
                remap[i] = kept.len() as u32;
                kept.push(v);
            }
        }
        let ranks = ranks.into_iter().map(|r| remap[r as usize]).collect();
        Space {
            points,
            index,
            spectrum: kept,
            ranks,
        }
    }

    /// Convenience constructor for integer-valued matrices.
    pub fn from_integer_matrix(points: &[&str], matrix: &[&[i64]]) -> Result<Space, SpaceError> {
        let m: Vec<Vec<Rational>> = matrix
            .iter()
            .map(|row| row.iter().map(|&v| Rational::from(v)).collect())
            .collect();
        let p: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        validate_space(&m, &p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, SpaceError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| SpaceError::UnknownPoint(id.to_string()))
    }

    /// Distance between points by index.
    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.spectrum[self.rank(i, j) as usize]
    }

    /// Distance between points by id.
    pub fn dist_by_id(&self, x: &str, y: &str) -> Result<&Rational, SpaceError> {
        Ok(self.dist(self.index_of(x)?, self.index_of(y)?))
    }

    /// Position of `d(i, j)` in the sorted spectrum.
    pub fn rank(&self, i: usize, j: usize) -> u32 {
        self.ranks[i * self.points.len() + j]
    }

    pub(crate) fn spectrum_values(&self) -> &[Rational] {
        &self.spectrum
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.dist(i, j).clone()).collect())
            .collect()
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum(self.spectrum.clone())
    }

    pub fn point_spectrum(&self, x: &str) -> Result<PointSpectrum, SpaceError> {
        let i = self.index_of(x)?;
        Ok(PointSpectrum {
            center: x.to_string(),
            values: self
                .point_spectrum_ranks(i)
                .into_iter()
                .map(|r| self.spectrum[r as usize].clone())
                .collect(),
        })
    }

    /// Sorted distinct ranks of the distances from point `i`.
    pub fn point_spectrum_ranks(&self, i: usize) -> Vec<u32> {
        let n = self.len();
        let set: BTreeSet<u32> = self.ranks[i * n..(i + 1) * n].iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn diameter(&self) -> &Rational {
        self.spectrum.last().expect("spectrum contains zero")
    }

    /// Subspace on the given point ids, keeping the order of `self`.
    pub fn restrict<S: AsRef<str>>(&self, subset: &[S]) -> Result<Space, SpaceError> {
        let mut idx = Vec::with_capacity(subset.len());
        for s in subset {
            idx.push(self.index_of(s.as_ref())?);
        }
        if idx.is_empty() {
            return Err(SpaceError::EmptySubset);
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(self.restrict_indices(&idx))
    }

    /// Subspace on the given sorted, distinct point indices.
    pub fn restrict_indices(&self, idx: &[usize]) -> Space {
        let points: Vec<String> = idx.iter().map(|&i| self.points[i].clone()).collect();
        let mut ranks = Vec::with_capacity(idx.len() * idx.len());
        for &i in idx {
            for &j in idx {
                ranks.push(self.rank(i, j));
            }
        }
        Space::from_ranks_unchecked(points, self.spectrum.clone(), ranks)
    }

    /// The same space with every distance replaced by `f(distance)`.
    ///
    /// `f` must be strictly increasing with `f(0) = 0`; the result is then
    /// weakly similar to `self`.
    pub fn map_distances(&self, f: impl Fn(&Rational) -> Rational) -> Space {
        let spectrum: Vec<Rational> = self.spectrum.iter().map(f).collect();
        assert!(spectrum[0].is_zero(), "scaling must fix zero");
        assert!(
            spectrum.windows(2).all(|w| w[0] < w[1]),
            "scaling must be strictly increasing"
        );
        Space {
            points: self.points.clone(),
            index: self.index.clone(),
            spectrum,
            ranks: self.ranks.clone(),
        }
    }

    /// The same metric with points renamed by `f`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Space {
        let points: Vec<String> = self.points.iter().map(|p| f(p)).collect();
        Space {
            index: index_points(&points).expect("renaming must stay injective"),
            points,
            spectrum: self.spectrum.clone(),
            ranks: self.ranks.clone(),
        }
    }

    /// The same space with points listed in the given order, which must name
    /// every point exactly once.
    pub fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<Space, SpaceError> {
        let mut perm = Vec::with_capacity(order.len());
        let mut seen = vec![false; self.len()];
        for s in order {
            let i = self.index_of(s.as_ref())?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(SpaceError::DuplicatePoint(s.as_ref().to_string()));
            }
            perm.push(i);
        }
        if let Some(missing) = seen.iter().position(|&b| !b) {
            return Err(SpaceError::UnknownPoint(self.points[missing].clone()));
        }
        Ok(self.permute(&perm))
    }

    /// The same space with points listed in the order `perm` (indices into `self`).
    pub fn permute(&self, perm: &[usize]) -> Space {
        assert_eq!(perm.len(), self.len());
        let points: Vec<String> = perm.iter().map(|&i| self.points[i].clone()).collect();
        let mut ranks = Vec::with_capacity(self.ranks.len());
        for &i in perm {
            for &j in perm {
                ranks.push(self.rank(i, j));
            }
        }
        Space {
            index: index_points(&points).expect("permutation"),
            points,
            spectrum: self.spectrum.clone(),
            ranks,
        }
    }
}

/// Free-function form of [`Space::spectrum`].
pub fn spectrum(space: &Space) -> Spectrum {
    space.spectrum()
}

pub fn point_spectrum(space: &Space, x: &str) -> Result<PointSpectrum, SpaceError> {
    space.point_spectrum(x)
}

pub fn diameter(space: &Space) -> Rational {
    space.diameter().clone()
}

pub fn restrict<S: AsRef<str>>(space: &Space, subset: &[S]) -> Result<Space, SpaceError> {
    space.restrict(subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn isosceles() -> Space {
        Space::from_integer_matrix(&["a", "b", "c"], &[&[0, 1, 2], &[1, 0, 2], &[2, 2, 0]]).unwrap()
    }

    fn rs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn singleton_is_valid() {
        let s = Space::from_integer_matrix(&["x"], &[&[0]]).unwrap();
        assert_eq!(s.spectrum().0, rs(&[0]));
        assert_eq!(s.diameter(), &Rational::zero());
        assert_eq!(s.point_spectrum("x").unwrap().values, rs(&[0]));
    }

    #[test]
    fn isosceles_with_long_base_is_valid() {
        let s = isosceles();
        assert_eq!(s.spectrum().0, rs(&[0, 1, 2]));
        assert_eq!(s.diameter(), &Rational::from(2));
        assert_eq!(s.point_spectrum("a").unwrap().values, rs(&[0, 1, 2]));
        assert_eq!(s.point_spectrum("c").unwrap().values, rs(&[0, 2]));
    }

    #[test]
    fn equilateral_spectrum() {
        let s = Space::from_integer_matrix(&["a", "b", "c"], &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert_eq!(s.spectrum().0, rs(&[0, 1]));
    }

    #[test]
    fn triangle_violation_names_witness() {
        let err = Space::from_integer_matrix(&["a", "b", "c"], &[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]).unwrap_err();
        assert_eq!(
            err,
            SpaceError::StrongTriangleViolation("b".into(), "c".into(), "a".into())
        );
    }

    #[test]
    fn axiom_errors() {
        let e = Space::from_integer_matrix(&["a", "b"], &[&[0, 1], &[2, 0]]).unwrap_err();
        assert_eq!(e, SpaceError::NotSymmetric("a".into(), "b".into()));
        let e = Space::from_integer_matrix(&["a", "b"], &[&[0, 1], &[1, 1]]).unwrap_err();
        assert_eq!(e, SpaceError::DiagonalNonzero("b".into()));
        let e = Space::from_integer_matrix(&["a", "b"], &[&[0, 0], &[0, 0]]).unwrap_err();
        assert_eq!(e, SpaceError::OffDiagonalZero("a".into(), "b".into()));
        let e = Space::from_integer_matrix(&["a", "b"], &[&[0, -1], &[-1, 0]]).unwrap_err();
        assert_eq!(e, SpaceError::NegativeDistance("a".into(), "b".into()));
        let e = Space::from_integer_matrix(&["a", "a"], &[&[0, 1], &[1, 0]]).unwrap_err();
        assert_eq!(e, SpaceError::DuplicatePoint("a".into()));
        let e = Space::from_integer_matrix(&["a", "b"], &[&[0, 1]]).unwrap_err();
        assert!(matches!(e, SpaceError::DimensionMismatch { .. }));
        assert_eq!(validate_space(&[], &[]).unwrap_err(), SpaceError::Empty);
    }

    #[test]
    fn restrict_cases() {
        let s = isosceles();
        assert_eq!(s.restrict(&["a", "b", "c"]).unwrap(), s);
        let ac = s.restrict(&["a", "c"]).unwrap();
        assert_eq!(ac.len(), 2);
        assert_eq!(ac.dist_by_id("a", "c").unwrap(), &Rational::from(2));
        assert_eq!(ac.spectrum().0, rs(&[0, 2]));
        assert_eq!(s.restrict::<&str>(&[]).unwrap_err(), SpaceError::EmptySubset);
        assert_eq!(s.restrict(&["q"]).unwrap_err(), SpaceError::UnknownPoint("q".into()));
        assert_eq!(
            s.point_spectrum("zz").unwrap_err(),
            SpaceError::UnknownPoint("zz".into())
        );
    }

    #[test]
    fn scaling_and_renaming() {
        let s = isosceles();
        let t = s.map_distances(|v| v * &Rational::from(3));
        assert_eq!(t.spectrum().0, rs(&[0, 3, 6]));
        let u = s.rename(|p| format!("p_{p}"));
        assert_eq!(u.dist_by_id("p_a", "p_c").unwrap(), &Rational::from(2));
    }
}
