//! Antisymmetrization, Grassmann tensors and wedge products.
//!
//! The antisymmetrizer `L` sends a cubical order-`m` tensor to the signed
//! sum of its `m!` index permutations (unnormalized, so `L∘L = m!·L`).
//! Applied to an outer product of vectors it yields their *Grassmann
//! tensor* `v_1 ∧ ⋯ ∧ v_m`, whose entry at `(i_1, …, i_m)` is the `m×m`
//! minor of the column matrix `[v_1 … v_m]` built from rows `i_1, …, i_m`.
//! Entries at strictly increasing indices therefore carry all the
//! information — the Plücker coordinates — and [`AntisymTensor`] stores
//! exactly those, expanding signs on lookup.
//!
//! Two wedge products are provided, both as alternating sums of outer
//! products along mode assignments:
//!
//! * [`wedge_vec`]: `A ∧ b = Σ_{k=1}^{m+1} (-1)^{k-1} A ×_{k̂} b`, inserting
//!   the vector at each mode in turn;
//! * [`wedge`]: `A ∧ B = Σ_θ sgn(θ) A ×_θ B` over all increasing `θ` of
//!   size `p`, with `sgn(θ)` the parity of the shuffle `(θ, θᶜ)`.
//!
//! For `p = q = 2` the shuffle signs come out as `+ − + + − +` on
//! `θ = (1,2), (1,3), (1,4), (2,3), (2,4), (3,4)`, which is the expansion
//! every identity in this crate is calibrated against.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg;
use crate::tensor::{
    self, outer, outer_product, DenseTensor, ModeAssignment, MAX_PERMUTATION_ORDER,
};

/// Parity of a permutation given in one-line notation: `+1` even, `-1` odd.
fn permutation_parity(perm: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Generalized sign of a multi-index: `0` when an index repeats, otherwise
/// the parity of the permutation that sorts it.
///
/// ```
/// use plucker::grassmann::generalized_sign;
///
/// assert_eq!(generalized_sign(&[0, 1, 2]), 1);
/// assert_eq!(generalized_sign(&[1, 0, 2]), -1);
/// assert_eq!(generalized_sign(&[0, 0, 1]), 0);
/// ```
pub fn generalized_sign(indices: &[usize]) -> i8 {
    for i in 0..indices.len() {
        for j in i + 1..indices.len() {
            if indices[i] == indices[j] {
                return 0;
            }
        }
    }
    permutation_parity(indices)
}

/// Unnormalized antisymmetrizer: `Σ_σ sgn(σ) · (σ-permuted T)`.
///
/// The output negates under every index transposition. Symmetric input of
/// order ≥ 2 is annihilated; applying the operator twice multiplies by `m!`.
pub fn antisymmetrize(t: &DenseTensor) -> Result<DenseTensor> {
    let m = t.order();
    if m <= 1 {
        return Ok(t.clone());
    }
    let n = t.cubical_dim()?;
    if m > MAX_PERMUTATION_ORDER {
        return Err(Error::OrderTooLarge {
            order: m,
            limit: MAX_PERMUTATION_ORDER,
        });
    }
    let mut values = vec![0.0; t.num_entries()];
    let mut permuted = vec![0usize; m];
    for perm in (0..m).permutations(m) {
        let sign = f64::from(permutation_parity(&perm));
        let mut pos = 0usize;
        tensor::each_index(&vec![n; m], |idx| {
            for (k, &p) in perm.iter().enumerate() {
                permuted[k] = idx[p];
            }
            values[pos] += sign * t.get(&permuted);
            pos += 1;
        });
    }
    DenseTensor::from_values(t.shape(), values)
}

/// Compact form of an antisymmetric tensor: one stored value per strictly
/// increasing multi-index (the Plücker coordinates), signs recovered on
/// lookup. Zero coordinates are not stored.
#[derive(Clone, Debug)]
pub struct AntisymTensor {
    order: usize,
    dim: usize,
    coords: BTreeMap<Vec<usize>, f64>,
    generators: Option<Vec<Vec<f64>>>,
}

impl PartialEq for AntisymTensor {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.dim == other.dim && self.coords == other.coords
    }
}

impl AntisymTensor {
    /// Builds from explicit coordinates. Keys must be strictly increasing
    /// multi-indices of length `order` with entries below `dim`; zero values
    /// are dropped.
    pub fn new(order: usize, dim: usize, coords: BTreeMap<Vec<usize>, f64>) -> Result<Self> {
        if order > dim && order > 0 {
            return Err(Error::Argument(format!(
                "an antisymmetric tensor of order {} over dimension {} is identically zero; \
                 refusing to construct it",
                order, dim
            )));
        }
        for key in coords.keys() {
            if key.len() != order
                || !key.windows(2).all(|w| w[0] < w[1])
                || key.iter().any(|&i| i >= dim)
            {
                return Err(Error::Argument(format!(
                    "coordinate index {:?} is not a strictly increasing {}-tuple below {}",
                    key, order, dim
                )));
            }
        }
        let coords = coords.into_iter().filter(|(_, v)| *v != 0.0).collect();
        Ok(Self {
            order,
            dim,
            coords,
            generators: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The stored (nonzero) Plücker coordinates, keyed by strictly
    /// increasing multi-index.
    pub fn coords(&self) -> &BTreeMap<Vec<usize>, f64> {
        &self.coords
    }

    /// The generating vector family, when the tensor was built from one.
    pub fn generators(&self) -> Option<&[Vec<f64>]> {
        self.generators.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinate at a strictly increasing multi-index.
    pub fn coord(&self, index: &[usize]) -> f64 {
        self.coords.get(index).copied().unwrap_or(0.0)
    }

    /// Entry at an arbitrary multi-index: zero on repeats, otherwise the
    /// sorted coordinate times the sort parity.
    pub fn get(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.order, "index length must equal the order");
        let sign = generalized_sign(index);
        if sign == 0 {
            return 0.0;
        }
        let mut sorted = index.to_vec();
        sorted.sort_unstable();
        f64::from(sign) * self.coord(&sorted)
    }

    pub fn max_abs_coord(&self) -> f64 {
        self.coords.values().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Expands to the dense representation (at most `n!/(n-m)!` nonzeros).
    pub fn to_dense(&self) -> Result<DenseTensor> {
        let shape = vec![self.dim; self.order];
        let mut out = DenseTensor::zeros(&shape)?;
        for (index, &value) in &self.coords {
            for perm in (0..self.order).permutations(self.order) {
                let sign = f64::from(permutation_parity(&perm));
                let permuted: Vec<usize> = perm.iter().map(|&p| index[p]).collect();
                out.set(&permuted, sign * value);
            }
        }
        Ok(out)
    }

    /// Reads the compact form off a dense tensor, verifying antisymmetry.
    ///
    /// Only strictly increasing entries are read; every other entry must
    /// match its sign-expanded value to within `1e-9 · max|T|`, else the
    /// first violation (row-major order) is reported with 1-based indices.
    pub fn from_dense(t: &DenseTensor) -> Result<Self> {
        let m = t.order();
        if m == 0 {
            let mut coords = BTreeMap::new();
            coords.insert(Vec::new(), t.values()[0]);
            return Self::new(0, 0, coords);
        }
        let n = t.cubical_dim()?;
        if m > n {
            return Err(Error::Argument(format!(
                "an antisymmetric tensor of order {} needs dimension >= {}, got {}",
                m, m, n
            )));
        }
        let mut coords = BTreeMap::new();
        for index in (0..n).combinations(m) {
            let v = t.get(&index);
            if v != 0.0 {
                coords.insert(index, v);
            }
        }
        let reference = Self {
            order: m,
            dim: n,
            coords,
            generators: None,
        };
        let tolerance = 1e-9 * t.max_abs();
        let mut violation: Option<(Vec<usize>, f64, f64)> = None;
        tensor::each_index(t.shape(), |idx| {
            if violation.is_some() {
                return;
            }
            let expected = reference.get(idx);
            let found = t.get(idx);
            if (found - expected).abs() > tolerance {
                violation = Some((idx.to_vec(), found, expected));
            }
        });
        if let Some((index, found, expected)) = violation {
            let mut sorted = index.clone();
            sorted.sort_unstable();
            return Err(Error::NotAntisymmetric {
                index: index.iter().map(|i| i + 1).collect(),
                reference: sorted.iter().map(|i| i + 1).collect(),
                found,
                expected,
            });
        }
        Ok(reference)
    }
}

/// Grassmann tensor `v_1 ∧ ⋯ ∧ v_m` of a family of `m` vectors in `R^n`.
///
/// Coordinates are the `m×m` row minors of the column matrix
/// `[v_1 … v_m]`, computed by elimination rather than permutation
/// expansion. The result is zero exactly when the family is linearly
/// dependent. `m > n` is rejected loudly; the empty family yields the
/// order-0 tensor with value 1.
///
/// ```
/// use plucker::grassmann::grassmann_from_vectors;
///
/// let t = grassmann_from_vectors(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
/// assert_eq!(t.coord(&[0, 1]), -2.0); // det [[1,3],[2,4]]
/// assert_eq!(t.get(&[1, 0]), 2.0);
/// ```
pub fn grassmann_from_vectors(vectors: &[Vec<f64>]) -> Result<AntisymTensor> {
    let m = vectors.len();
    if m == 0 {
        let mut coords = BTreeMap::new();
        coords.insert(Vec::new(), 1.0);
        let mut t = AntisymTensor::new(0, 0, coords)?;
        t.generators = Some(Vec::new());
        return Ok(t);
    }
    let n = vectors[0].len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(
            "all vectors of a family must share one dimension".into(),
        ));
    }
    if m > n {
        return Err(Error::Argument(format!(
            "cannot wedge {} vectors in dimension {}: the result is identically zero",
            m, n
        )));
    }
    let mut coords = BTreeMap::new();
    let mut minor = vec![vec![0.0; m]; m];
    for rows in (0..n).combinations(m) {
        for (r, &row) in rows.iter().enumerate() {
            for (c, vector) in vectors.iter().enumerate() {
                minor[r][c] = vector[row];
            }
        }
        let d = linalg::det(&minor)?;
        if d != 0.0 {
            coords.insert(rows, d);
        }
    }
    let mut t = AntisymTensor::new(m, n, coords)?;
    t.generators = Some(vectors.to_vec());
    Ok(t)
}

/// The sign tensor `H` over `R^n`: the Grassmann tensor of the standard
/// basis, whose dense entries are the generalized signs of their indices.
pub fn sign_tensor(n: usize) -> Result<AntisymTensor> {
    let basis: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect();
    grassmann_from_vectors(&basis)
}

/// Wedge of a cubical tensor with a vector:
/// `A ∧ b = Σ_{k=1}^{m+1} (-1)^{k-1} A ×_{k̂} b`, where the `k`-th term
/// places `b` on mode `k` and the factors of `A` on the remaining modes in
/// order.
pub fn wedge_vec(a: &DenseTensor, b: &[f64]) -> Result<DenseTensor> {
    let m = a.order();
    if m == 0 {
        let mut out = DenseTensor::vector(b);
        out.scale(a.values()[0]);
        return Ok(out);
    }
    let n = a.cubical_dim()?;
    if b.len() != n {
        return Err(Error::Dimension(format!(
            "vector length {} does not match tensor dimension {}",
            b.len(),
            n
        )));
    }
    if m + 1 > MAX_PERMUTATION_ORDER {
        return Err(Error::OrderTooLarge {
            order: m + 1,
            limit: MAX_PERMUTATION_ORDER,
        });
    }
    let bt = DenseTensor::vector(b);
    let mut acc = DenseTensor::zeros(&vec![n; m + 1])?;
    for k in 0..=m {
        let theta: Vec<usize> = (0..=m).filter(|&t| t != k).collect();
        let assign = ModeAssignment::new(m + 1, &theta)?;
        let term = outer_product(a, &bt, &assign)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc.add_scaled(&term, sign);
    }
    Ok(acc)
}

/// Generalized wedge `A ∧ B = Σ_θ sgn(θ) A ×_θ B` over all increasing
/// assignments `θ` of the first factor's modes, signed by the parity of the
/// shuffle `(θ, θᶜ)`.
pub fn wedge(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    if a.order() == 0 {
        let mut out = b.clone();
        out.scale(a.values()[0]);
        return Ok(out);
    }
    if b.order() == 0 {
        let mut out = a.clone();
        out.scale(b.values()[0]);
        return Ok(out);
    }
    let n = a.cubical_dim()?;
    if b.cubical_dim()? != n {
        return Err(Error::Dimension(format!(
            "wedge factors must share a dimension: {} vs {}",
            n,
            b.cubical_dim()?
        )));
    }
    let (p, q) = (a.order(), b.order());
    let m = p + q;
    if m > MAX_PERMUTATION_ORDER {
        return Err(Error::OrderTooLarge {
            order: m,
            limit: MAX_PERMUTATION_ORDER,
        });
    }
    let mut acc = DenseTensor::zeros(&vec![n; m])?;
    for assign in ModeAssignment::enumerate(p, m) {
        let term = outer_product(a, b, &assign)?;
        acc.add_scaled(&term, f64::from(assign.shuffle_sign()));
    }
    Ok(acc)
}

/// The commutation tensor `K_n = I ×_{(1,3)} I`, the identity map on `n×n`
/// matrices: contracting a matrix against either its trailing or leading
/// index pair returns the matrix unchanged.
pub fn commutation_tensor(n: usize) -> Result<DenseTensor> {
    let eye = DenseTensor::identity(n);
    let assign = ModeAssignment::new(4, &[0, 2])?;
    outer_product(&eye, &eye, &assign)
}

/// The order-4 trace projector `2·(I_n × I_n)`: contracting any `n×n`
/// matrix `X` against its trailing index pair yields `2·Tr(X)·I_n`.
pub fn identity_wedge(n: usize) -> Result<DenseTensor> {
    let eye = DenseTensor::identity(n);
    let mut out = outer(&eye, &eye)?;
    out.scale(2.0);
    Ok(out)
}
