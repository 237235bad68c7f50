//! Exact dense linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Affine solution set `particular + span(nullspace)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.nullspace.is_empty()
    }
}

/// Incrementally built linear system kept in reduced row echelon form, so
/// equations can be added while the number of free variables is watched.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    nvars: usize,
    /// `(pivot column, row, rhs)`, rows fully reduced against each other.
    pivots: Vec<(usize, Vec<Rational>, Rational)>,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, pivots: Vec::new(), inconsistent: false }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_count(&self) -> usize {
        self.nvars - self.pivots.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Adds `coeffs · u = rhs`. Returns true when the equation was independent.
    pub fn add_equation(&mut self, coeffs: &[Rational], rhs: &Rational) -> bool {
        assert_eq!(coeffs.len(), self.nvars);
        let mut row = coeffs.to_vec();
        let mut b = rhs.clone();
        for (col, prow, prhs) in &self.pivots {
            if row[*col].is_zero() {
                continue;
            }
            let f = row[*col].clone();
            for (x, p) in row.iter_mut().zip(prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            b -= &f * prhs;
        }
        let Some(col) = row.iter().position(|x| !x.is_zero()) else {
            if !b.is_zero() {
                self.inconsistent = true;
            }
            return false;
        };
        let inv = row[col].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        b *= &inv;
        for (_, prow, prhs) in self.pivots.iter_mut() {
            if prow[col].is_zero() {
                continue;
            }
            let f = prow[col].clone();
            for (x, r) in prow.iter_mut().zip(&row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
            *prhs -= &f * &b;
        }
        self.pivots.push((col, row, b));
        true
    }

    pub fn solution(&self) -> Result<AffineSolution> {
        if self.inconsistent {
            return Err(Error::InconsistentSystem);
        }
        let mut particular = vec![Rational::zero(); self.nvars];
        let mut is_pivot = vec![false; self.nvars];
        for (col, _, rhs) in &self.pivots {
            particular[*col] = rhs.clone();
            is_pivot[*col] = true;
        }
        let mut nullspace = Vec::new();
        for free in (0..self.nvars).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rational::zero(); self.nvars];
            v[free] = Rational::one();
            for (col, row, _) in &self.pivots {
                v[*col] = -&row[free];
            }
            nullspace.push(v);
        }
        Ok(AffineSolution { particular, nullspace })
    }
}

/// Solves `A x = b` exactly, reporting the full affine solution set.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<AffineSolution> {
    assert_eq!(a.rows(), b.len());
    let mut sys = LinearSystem::new(a.cols());
    for (i, bi) in b.iter().enumerate() {
        sys.add_equation(a.row(i), bi);
    }
    sys.solution()
}

/// Row echelon basis of a subspace of sparse vectors indexed by `K`; the
/// pivot of each row is its largest key.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Rational>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Unique remainder of `v` modulo the subspace: no pivot key survives.
    pub fn reduce(&self, v: &BTreeMap<K, Rational>) -> BTreeMap<K, Rational> {
        let mut v: BTreeMap<K, Rational> = v.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next_back().cloned(),
                Some(c) => v.range(..c.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some(row) = self.rows.get(&key) {
                let f = v[&key].clone();
                for (k, c) in row {
                    let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &f * c;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
            cursor = Some(key);
        }
        v
    }

    pub fn contains(&self, v: &BTreeMap<K, Rational>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; false when it was already contained.
    pub fn insert(&mut self, v: &BTreeMap<K, Rational>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        let row: BTreeMap<K, Rational> = r.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        // keep rows fully reduced so remainders are canonical
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&pivot).cloned() {
                for (k, c) in &row {
                    let e = other.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &f * c;
                    if e.is_zero() {
                        other.remove(k);
                    }
                }
            }
        }
        self.rows.insert(pivot, row);
        true
    }
}
