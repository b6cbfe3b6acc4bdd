//! Dense multi-way arrays and their products.
//!
//! A tensor of order `m` is a flat `Vec<f64>` in row-major order plus a
//! shape `(I_1, …, I_m)`. Order 0 is a scalar, order 1 a vector, order 2 a
//! matrix. Multi-indices are `&[usize]` slices, 0-based in code; file formats
//! and documentation prose follow the usual 1-based mathematical convention.
//!
//! Three products are provided:
//!
//! * [`outer_product`] — the outer product along a [`ModeAssignment`]
//!   `(θ, θᶜ)`: the modes listed in `θ` are fed by the first factor, the
//!   rest by the second, so `C_σ = A_{σ|θ} · B_{σ|θᶜ}`.
//! * [`contract_paired`] / [`contract_paired_front`] — full contraction of
//!   an order-`k` tensor against the trailing (resp. leading) `k` modes of
//!   an order-`2k` tensor.
//! * [`contract_mode`] — contraction of one mode by a matrix,
//!   `(A ×₍ₖ₎ B)_{…i_k…} = Σ_j A_{…j…} B_{j i_k}`; for matrices this makes
//!   `A ×₍₂₎ B = AB`.
//!
//! All operations are pure functions over immutable values and use a fixed
//! summation order, so results are bit-identical from run to run.

use crate::error::{Error, Result};

/// Default cap on the number of entries a single tensor may hold.
///
/// Construction is rejected before anything is allocated, so oversized
/// requests fail fast instead of thrashing.
pub const DEFAULT_ENTRY_CAP: usize = 100_000_000;

/// Largest order accepted by the `m!`-term permutation-expansion algorithms.
pub const MAX_PERMUTATION_ORDER: usize = 10;

fn checked_len(shape: &[usize], cap: usize) -> Result<usize> {
    let mut product: u128 = 1;
    for &dim in shape {
        if dim == 0 {
            return Err(Error::Argument(
                "tensor shapes must consist of positive dimensions".into(),
            ));
        }
        product *= dim as u128;
        if product > cap as u128 {
            return Err(Error::TooLarge {
                entries: product,
                cap,
            });
        }
    }
    Ok(product as usize)
}

/// Visits every multi-index of `shape` in row-major order.
pub(crate) fn each_index(shape: &[usize], mut f: impl FnMut(&[usize])) {
    if shape.contains(&0) {
        return;
    }
    let mut idx = vec![0usize; shape.len()];
    loop {
        f(&idx);
        let mut k = shape.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// A dense real tensor with explicit shape and row-major entries.
///
/// ```
/// use plucker::tensor::DenseTensor;
///
/// let m = DenseTensor::from_values(&[2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
/// assert_eq!(m.get(&[1, 0]), 3.0);
/// assert_eq!(m.order(), 2);
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl DenseTensor {
    /// Zero tensor of the given shape. Fails if the entry count exceeds
    /// [`DEFAULT_ENTRY_CAP`].
    pub fn zeros(shape: &[usize]) -> Result<Self> {
        Self::zeros_with_cap(shape, DEFAULT_ENTRY_CAP)
    }

    /// Zero tensor checked against a caller-chosen entry cap.
    pub fn zeros_with_cap(shape: &[usize], cap: usize) -> Result<Self> {
        let len = checked_len(shape, cap)?;
        Ok(Self {
            shape: shape.to_vec(),
            values: vec![0.0; len],
        })
    }

    /// Builds a tensor from row-major values.
    pub fn from_values(shape: &[usize], values: Vec<f64>) -> Result<Self> {
        let len = checked_len(shape, DEFAULT_ENTRY_CAP)?;
        if values.len() != len {
            return Err(Error::Dimension(format!(
                "shape {:?} needs {} entries, got {}",
                shape,
                len,
                values.len()
            )));
        }
        Ok(Self {
            shape: shape.to_vec(),
            values,
        })
    }

    /// Order-0 tensor holding a single value.
    pub fn scalar(value: f64) -> Self {
        Self {
            shape: Vec::new(),
            values: vec![value],
        }
    }

    /// Order-1 tensor.
    pub fn vector(v: &[f64]) -> Self {
        Self {
            shape: vec![v.len()],
            values: v.to_vec(),
        }
    }

    /// Order-2 tensor from rows of equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("matrix rows have unequal lengths".into()));
        }
        Self::from_values(&[r, c], rows.concat())
    }

    /// The `n × n` identity matrix as an order-2 tensor.
    pub fn identity(n: usize) -> Self {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            values[i * n + i] = 1.0;
        }
        Self {
            shape: vec![n, n],
            values,
        }
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn num_entries(&self) -> usize {
        self.values.len()
    }

    /// True when every mode has the same dimension (vacuously for order 0).
    pub fn is_cubical(&self) -> bool {
        self.shape.windows(2).all(|w| w[0] == w[1])
    }

    /// Dimension of a cubical tensor of order ≥ 1.
    pub fn cubical_dim(&self) -> Result<usize> {
        if !self.is_cubical() {
            return Err(Error::Dimension(format!(
                "expected a cubical tensor, got shape {:?}",
                self.shape
            )));
        }
        self.shape
            .first()
            .copied()
            .ok_or_else(|| Error::Dimension("an order-0 tensor has no mode dimension".into()))
    }

    fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.shape.len());
        let mut off = 0;
        for (k, (&i, &d)) in index.iter().zip(&self.shape).enumerate() {
            assert!(
                i < d,
                "index {} out of bounds for mode {} (dim {})",
                i,
                k,
                d
            );
            off = off * d + i;
        }
        off
    }

    /// Entry at a 0-based multi-index. Panics when the index is out of range.
    pub fn get(&self, index: &[usize]) -> f64 {
        self.values[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) {
        let off = self.offset(index);
        self.values[off] = value;
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Scales every entry in place.
    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.values {
            *v *= factor;
        }
    }

    /// Accumulates `factor * other` into `self` entrywise.
    pub fn add_scaled(&mut self, other: &Self, factor: f64) {
        assert_eq!(self.shape, other.shape, "add_scaled needs matching shapes");
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += factor * b;
        }
    }

    /// Checks invariance of every entry under each adjacent index
    /// transposition; those transpositions generate the full symmetric
    /// group, so this is the symmetry predicate at `O(m·n^m)` cost.
    pub fn is_symmetric(&self) -> Result<bool> {
        let m = self.order();
        if m <= 1 {
            return Ok(true);
        }
        self.cubical_dim()?;
        let mut swapped = vec![0usize; m];
        for t in 0..m - 1 {
            let mut ok = true;
            each_index(&self.shape, |idx| {
                if !ok {
                    return;
                }
                swapped.copy_from_slice(idx);
                swapped.swap(t, t + 1);
                if self.get(idx) != self.get(&swapped) {
                    ok = false;
                }
            });
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subtensor selected by one index set per mode; entries are re-indexed
    /// within the product of the given sets, in the order given.
    pub fn subtensor(&self, parts: &[Vec<usize>]) -> Result<DenseTensor> {
        if parts.len() != self.order() {
            return Err(Error::Dimension(format!(
                "subtensor needs one index set per mode: got {} sets for order {}",
                parts.len(),
                self.order()
            )));
        }
        for (k, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::Argument(format!(
                    "subtensor index set for mode {} is empty",
                    k + 1
                )));
            }
            if let Some(&bad) = part.iter().find(|&&i| i >= self.shape[k]) {
                return Err(Error::Argument(format!(
                    "subtensor index {} out of range for mode {} (dim {})",
                    bad,
                    k + 1,
                    self.shape[k]
                )));
            }
        }
        let new_shape: Vec<usize> = parts.iter().map(Vec::len).collect();
        let mut values = Vec::with_capacity(new_shape.iter().product());
        let mut src = vec![0usize; self.order()];
        each_index(&new_shape, |idx| {
            for (k, &i) in idx.iter().enumerate() {
                src[k] = parts[k][i];
            }
            values.push(self.get(&src));
        });
        DenseTensor::from_values(&new_shape, values)
    }

    /// Principal subtensor: the same index set on every mode of a cubical
    /// tensor. `principal_subtensor(&(0..r).collect::<Vec<_>>())` is the
    /// leading principal subtensor.
    pub fn principal_subtensor(&self, set: &[usize]) -> Result<DenseTensor> {
        self.cubical_dim()?;
        let parts = vec![set.to_vec(); self.order()];
        self.subtensor(&parts)
    }
}

/// A partition of the modes `[m]` of an outer product into the ordered slots
/// fed by the first factor (`theta`) and by the second (`theta_c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeAssignment {
    theta: Vec<usize>,
    theta_c: Vec<usize>,
}

impl ModeAssignment {
    /// `theta` must be strictly increasing with entries below `order`.
    pub fn new(order: usize, theta: &[usize]) -> Result<Self> {
        if !theta.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Argument(format!(
                "mode assignment {:?} is not strictly increasing",
                theta
            )));
        }
        if let Some(&bad) = theta.iter().find(|&&t| t >= order) {
            return Err(Error::Argument(format!(
                "mode {} out of range for order {}",
                bad, order
            )));
        }
        let theta_c = (0..order).filter(|m| !theta.contains(m)).collect();
        Ok(Self {
            theta: theta.to_vec(),
            theta_c,
        })
    }

    /// The plain assignment `θ = (0, …, p-1)`: first factor leads.
    pub fn leading(p: usize, order: usize) -> Result<Self> {
        let theta: Vec<usize> = (0..p).collect();
        Self::new(order, &theta)
    }

    /// All `C(order, p)` assignments of `p` modes, in lexicographic order
    /// of `θ`.
    pub fn enumerate(p: usize, order: usize) -> impl Iterator<Item = ModeAssignment> {
        use itertools::Itertools;
        (0..order)
            .combinations(p)
            .map(move |theta| ModeAssignment::new(order, &theta).expect("valid by construction"))
    }

    pub fn order(&self) -> usize {
        self.theta.len() + self.theta_c.len()
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn theta_c(&self) -> &[usize] {
        &self.theta_c
    }

    /// Sign of the permutation `(θ, θᶜ)` of `[m]`, i.e. the parity of the
    /// shuffle that interleaves the two factors.
    pub fn shuffle_sign(&self) -> i8 {
        let concat: Vec<usize> = self
            .theta
            .iter()
            .chain(self.theta_c.iter())
            .copied()
            .collect();
        let mut inversions = 0usize;
        for i in 0..concat.len() {
            for j in i + 1..concat.len() {
                if concat[i] > concat[j] {
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
}

/// Outer product along a mode assignment: `C_σ = A_{σ|θ} · B_{σ|θᶜ}`.
pub fn outer_product(
    a: &DenseTensor,
    b: &DenseTensor,
    assign: &ModeAssignment,
) -> Result<DenseTensor> {
    if assign.order() != a.order() + b.order() || assign.theta().len() != a.order() {
        return Err(Error::Dimension(format!(
            "mode assignment ({} + {} modes) does not match factor orders {} and {}",
            assign.theta().len(),
            assign.theta_c().len(),
            a.order(),
            b.order()
        )));
    }
    let mut shape = vec![0usize; assign.order()];
    for (slot, &mode) in assign.theta().iter().enumerate() {
        shape[mode] = a.shape()[slot];
    }
    for (slot, &mode) in assign.theta_c().iter().enumerate() {
        shape[mode] = b.shape()[slot];
    }
    let len = checked_len(&shape, DEFAULT_ENTRY_CAP)?;
    let mut values = Vec::with_capacity(len);
    let mut ia = vec![0usize; a.order()];
    let mut ib = vec![0usize; b.order()];
    each_index(&shape, |idx| {
        for (slot, &mode) in assign.theta().iter().enumerate() {
            ia[slot] = idx[mode];
        }
        for (slot, &mode) in assign.theta_c().iter().enumerate() {
            ib[slot] = idx[mode];
        }
        values.push(a.get(&ia) * b.get(&ib));
    });
    DenseTensor::from_values(&shape, values)
}

/// Plain outer product `A × B`: the first factor feeds the leading modes.
pub fn outer(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    let assign = ModeAssignment::leading(a.order(), a.order() + b.order())?;
    outer_product(a, b, &assign)
}

/// Value of the homogeneous form `A x^m = Σ_σ A_σ x_{i_1} ⋯ x_{i_m}`.
///
/// For order 0 this is the stored scalar; otherwise `a` must be cubical with
/// dimension `x.len()`.
pub fn poly_eval(a: &DenseTensor, x: &[f64]) -> Result<f64> {
    if a.order() == 0 {
        return Ok(a.values[0]);
    }
    let n = a.cubical_dim()?;
    if x.len() != n {
        return Err(Error::Dimension(format!(
            "tensor dimension {} does not match vector length {}",
            n,
            x.len()
        )));
    }
    let mut acc = 0.0;
    let mut pos = 0usize;
    each_index(a.shape(), |idx| {
        let monomial: f64 = idx.iter().map(|&i| x[i]).product();
        acc += a.values[pos] * monomial;
        pos += 1;
    });
    Ok(acc)
}

/// Order-`2k` tensor with entries `∏_s A_{i_s j_s}`: the `k`-fold paired
/// power of a matrix. Simultaneously permuting the `i`-block and the
/// `j`-block leaves every entry unchanged.
pub fn paired_power(a: &DenseTensor, k: usize) -> Result<DenseTensor> {
    if a.order() != 2 {
        return Err(Error::Dimension(format!(
            "paired power needs a matrix, got order {}",
            a.order()
        )));
    }
    if k == 0 {
        return Err(Error::Argument("paired power needs k >= 1".into()));
    }
    let (p, q) = (a.shape()[0], a.shape()[1]);
    let mut shape = vec![p; k];
    shape.extend(std::iter::repeat_n(q, k));
    let len = checked_len(&shape, DEFAULT_ENTRY_CAP)?;
    let mut values = Vec::with_capacity(len);
    each_index(&shape, |idx| {
        let product: f64 = (0..k).map(|s| a.get(&[idx[s], idx[k + s]])).product();
        values.push(product);
    });
    DenseTensor::from_values(&shape, values)
}

/// Contraction of `b` against the trailing `b.order()` modes of `a`:
/// `(A B)_{i_1…i_k} = Σ_{j_1…j_k} A_{i_1…i_k; j_1…j_k} B_{j_1…j_k}`.
pub fn contract_paired(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    let k = b.order();
    if a.order() < k {
        return Err(Error::Dimension(format!(
            "cannot contract an order-{} tensor against trailing {} modes",
            a.order(),
            k
        )));
    }
    let (lead, trail) = a.shape().split_at(a.order() - k);
    if trail != b.shape() {
        return Err(Error::Dimension(format!(
            "trailing modes {:?} do not match shape {:?}",
            trail,
            b.shape()
        )));
    }
    let block = b.num_entries();
    let values: Vec<f64> = a
        .values
        .chunks_exact(block)
        .map(|chunk| chunk.iter().zip(&b.values).map(|(x, y)| x * y).sum())
        .collect();
    DenseTensor::from_values(lead, values)
}

/// Contraction of `b` against the leading `b.order()` modes of `a`:
/// `(B A)_{i_1…i_k} = Σ_{j_1…j_k} B_{j_1…j_k} A_{j_1…j_k; i_1…i_k}`.
pub fn contract_paired_front(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    let k = b.order();
    if a.order() < k {
        return Err(Error::Dimension(format!(
            "cannot contract an order-{} tensor against leading {} modes",
            a.order(),
            k
        )));
    }
    let (lead, trail) = a.shape().split_at(k);
    if lead != b.shape() {
        return Err(Error::Dimension(format!(
            "leading modes {:?} do not match shape {:?}",
            lead,
            b.shape()
        )));
    }
    let block: usize = trail.iter().product();
    let mut values = vec![0.0; block];
    for (chunk, weight) in a.values.chunks_exact(block).zip(&b.values) {
        for (acc, x) in values.iter_mut().zip(chunk) {
            *acc += weight * x;
        }
    }
    DenseTensor::from_values(trail, values)
}

/// Mode-`k` contraction by a matrix:
/// `(A ×₍ₖ₎ B)_{i_1…i_k…i_m} = Σ_j A_{i_1…j…i_m} B_{j i_k}`.
///
/// `mode` is 0-based. For matrices, `contract_mode(a, b, 1)` is the ordinary
/// product `AB`, and `contract_mode(a, b, 0)` works out to `BᵀA`.
pub fn contract_mode(a: &DenseTensor, b: &DenseTensor, mode: usize) -> Result<DenseTensor> {
    if b.order() != 2 {
        return Err(Error::Dimension(format!(
            "mode contraction needs a matrix, got order {}",
            b.order()
        )));
    }
    if mode >= a.order() {
        return Err(Error::Dimension(format!(
            "mode {} out of range for an order-{} tensor",
            mode + 1,
            a.order()
        )));
    }
    let (rows, cols) = (b.shape()[0], b.shape()[1]);
    if a.shape()[mode] != rows {
        return Err(Error::Dimension(format!(
            "mode-{} dimension {} does not match the matrix row count {}",
            mode + 1,
            a.shape()[mode],
            rows
        )));
    }
    let mut shape = a.shape().to_vec();
    shape[mode] = cols;
    let len = checked_len(&shape, DEFAULT_ENTRY_CAP)?;
    let mut values = Vec::with_capacity(len);
    let mut src = vec![0usize; a.order()];
    each_index(&shape, |idx| {
        src.copy_from_slice(idx);
        let mut acc = 0.0;
        for j in 0..rows {
            src[mode] = j;
            acc += a.get(&src) * b.get(&[j, idx[mode]]);
        }
        values.push(acc);
    });
    DenseTensor::from_values(&shape, values)
}
