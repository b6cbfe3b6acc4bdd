//! Projective geometry built on antisymmetric tensors: line matrices,
//! planes through points, plane intersection, epipolar residuals,
//! leave-one-out wedge families and polytope surface tests.
//!
//! Points and planes live in homogeneous coordinates, so every result is
//! defined up to scale. Where a canonical representative is needed
//! (see [`intersect_planes`]) vectors are normalized to unit length with
//! the first significantly nonzero coordinate positive.

use crate::error::{Error, Result};
use crate::grassmann::{grassmann_from_vectors, AntisymTensor};
use crate::linalg;
use crate::tensor::{contract_mode, DenseTensor};

/// Relative tolerance used for all rank and null-space decisions.
pub const RANK_TOL: f64 = 1e-10;

/// A 4×4 antisymmetric matrix `X Yᵀ − Y Xᵀ` representing the projective
/// line through homogeneous points `X` and `Y`. Zero when the generators
/// are dependent, rank 2 otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct PlueckerMatrix {
    entries: [[f64; 4]; 4],
    generators: Option<([f64; 4], [f64; 4])>,
}

impl PlueckerMatrix {
    /// The line matrix of two homogeneous points.
    pub fn from_points(x: [f64; 4], y: [f64; 4]) -> Self {
        let mut entries = [[0.0; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = x[i] * y[j] - y[i] * x[j];
            }
        }
        Self {
            entries,
            generators: Some((x, y)),
        }
    }

    /// Wraps an existing matrix, verifying antisymmetry to within
    /// `1e-9 · max|entry|`.
    #[allow(clippy::needless_range_loop)] // transposed access wants indices
    pub fn from_matrix(entries: [[f64; 4]; 4]) -> Result<Self> {
        let scale = entries
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        for i in 0..4 {
            for j in i..4 {
                if (entries[i][j] + entries[j][i]).abs() > 1e-9 * scale {
                    return Err(Error::NotAntisymmetric {
                        index: vec![i + 1, j + 1],
                        reference: vec![j + 1, i + 1],
                        found: entries[i][j],
                        expected: -entries[j][i],
                    });
                }
            }
        }
        Ok(Self {
            entries,
            generators: None,
        })
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn generators(&self) -> Option<([f64; 4], [f64; 4])> {
        self.generators
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }

    /// Numerical rank; 0 or 2 for a line matrix built from points.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<f64>> = self.entries.iter().map(|r| r.to_vec()).collect();
        linalg::rank(&rows, RANK_TOL)
    }

    /// Matrix-vector action `P z`.
    pub fn apply(&self, z: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (i, row) in self.entries.iter().enumerate() {
            out[i] = row.iter().zip(&z).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }
}

/// The line matrix `P[X, Y] = X Yᵀ − Y Xᵀ`.
pub fn plucker_line(x: [f64; 4], y: [f64; 4]) -> PlueckerMatrix {
    PlueckerMatrix::from_points(x, y)
}

/// Tests projective equivalence of two nonzero line matrices.
///
/// Fits `λ` with `P1 ≈ λ·P2` by least squares over the entries of `P2`
/// larger than `tol · max|P2|`, and accepts when the residual satisfies
/// `‖P1 − λP2‖ ≤ tol · ‖P1‖`. Returns the scale on success, `None` when
/// the lines differ. Two matrices built from point pairs spanning the same
/// plane always relate by the determinant of the change of basis.
pub fn plucker_equivalent(
    p1: &PlueckerMatrix,
    p2: &PlueckerMatrix,
    tol: f64,
) -> Result<Option<f64>> {
    if p1.is_zero() || p2.is_zero() {
        return Err(Error::Argument(
            "equivalence of line matrices needs nonzero inputs".into(),
        ));
    }
    let threshold = tol * p2.max_abs();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let e2 = p2.entries[i][j];
            if e2.abs() > threshold {
                num += p1.entries[i][j] * e2;
                den += e2 * e2;
            }
        }
    }
    if den == 0.0 {
        return Ok(None);
    }
    let lambda = num / den;
    let mut residual = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let d = p1.entries[i][j] - lambda * p2.entries[i][j];
            residual += d * d;
        }
    }
    if residual.sqrt() <= tol * p1.norm() && lambda != 0.0 {
        Ok(Some(lambda))
    } else {
        Ok(None)
    }
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm4(a: &[f64; 4]) -> f64 {
    dot4(a, a).sqrt()
}

/// Gram–Schmidt step for a pair of independent vectors: returns `(X', Y')`
/// with unit norms, `⟨X', Y'⟩ = 0` and `span{X', Y'} = span{X, Y}`, so the
/// line matrix changes only by scale.
pub fn orthonormalize_pair(x: [f64; 4], y: [f64; 4]) -> Result<([f64; 4], [f64; 4])> {
    let nx = norm4(&x);
    if nx == 0.0 {
        return Err(Error::Degenerate(
            "cannot orthonormalize a zero vector".into(),
        ));
    }
    let mut xp = x;
    for v in &mut xp {
        *v /= nx;
    }
    let proj = dot4(&xp, &y);
    let mut ybar = y;
    for (v, b) in ybar.iter_mut().zip(&xp) {
        *v -= proj * b;
    }
    let nb = norm4(&ybar);
    if nb <= RANK_TOL * norm4(&y).max(nx) {
        return Err(Error::Degenerate(
            "the two vectors span less than two dimensions".into(),
        ));
    }
    for v in &mut ybar {
        *v /= nb;
    }
    Ok((xp, ybar))
}

/// The order-3 Grassmann tensor of three homogeneous points in general
/// position, representing the plane they span.
///
/// Two residuals answer the two incidence questions about that plane:
///
/// * [`tensor_point_residual`]`(plane, v)` vanishes exactly when
///   `pᵢᵀv = 0` for all three points — that is, when `v` holds the
///   homogeneous coefficients of the plane itself (up to scale). This is
///   the dual of [`intersect_planes`].
/// * [`plane_membership_residual`]`(plane, x)` vanishes exactly when the
///   point `x` lies on the plane, i.e. `x ∈ span{p1, p2, p3}`.
pub fn plane_tensor(p1: [f64; 4], p2: [f64; 4], p3: [f64; 4]) -> Result<AntisymTensor> {
    let rows = vec![p1.to_vec(), p2.to_vec(), p3.to_vec()];
    if linalg::rank(&rows, RANK_TOL) != 3 {
        return Err(Error::Degenerate(
            "the three points do not span a plane".into(),
        ));
    }
    grassmann_from_vectors(&rows)
}

/// Signed incidence of a point with a plane tensor: appending `x` to the
/// three generators collapses the wedge to `det [p1 p2 p3 x]` times the
/// sign tensor, and this returns that determinant. Zero exactly when `x`
/// lies on the plane spanned by the points.
pub fn plane_membership_residual(plane: &AntisymTensor, x: &[f64; 4]) -> Result<f64> {
    if plane.order() != 3 || plane.dim() != 4 {
        return Err(Error::Dimension(format!(
            "plane membership needs an order-3 tensor over dimension 4, got order {} over {}",
            plane.order(),
            plane.dim()
        )));
    }
    // Laplace expansion of det [p1 p2 p3 x] along the appended column: the
    // cofactors are the plane tensor's coordinates.
    let mut acc = 0.0;
    for (l, &xl) in x.iter().enumerate() {
        let complement: Vec<usize> = (0..4).filter(|&r| r != l).collect();
        let sign = if (3 - l) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * plane.coord(&complement) * xl;
    }
    Ok(acc)
}

/// Contraction of an antisymmetric tensor against a vector on its last
/// mode: `(A x)_{i_1…i_{m-1}} = Σ_j A_{i_1…i_{m-1} j} x_j`.
///
/// For a tensor generated by a family `a^1, …, a^m` this equals the signed
/// combination `Σ_k (-1)^{m-k} (xᵀa^k) · ⋀_{j≠k} a^j`, so it vanishes
/// exactly when `x` is orthogonal to every generator.
pub fn tensor_point_residual(a: &AntisymTensor, x: &[f64]) -> Result<DenseTensor> {
    if a.order() == 0 {
        return Err(Error::Dimension(
            "cannot contract an order-0 tensor against a vector".into(),
        ));
    }
    if x.len() != a.dim() {
        return Err(Error::Dimension(format!(
            "vector length {} does not match tensor dimension {}",
            x.len(),
            a.dim()
        )));
    }
    let dense = a.to_dense()?;
    let n = a.dim();
    let values: Vec<f64> = dense
        .values()
        .chunks_exact(n)
        .map(|chunk| chunk.iter().zip(x).map(|(t, v)| t * v).sum())
        .collect();
    DenseTensor::from_values(&vec![n; a.order() - 1], values)
}

/// Homogeneous intersection point of three independent planes.
///
/// Solves the 3×4 null space, then canonicalizes: unit 2-norm with the
/// first significantly nonzero coordinate positive. Satisfies
/// `α_iᵀ x = 0` for every plane and annihilates the plane tensor.
pub fn intersect_planes(a1: [f64; 4], a2: [f64; 4], a3: [f64; 4]) -> Result<[f64; 4]> {
    let rows = vec![a1.to_vec(), a2.to_vec(), a3.to_vec()];
    if linalg::rank(&rows, RANK_TOL) != 3 {
        return Err(Error::Degenerate(
            "the three planes do not meet in a single point".into(),
        ));
    }
    let basis = linalg::null_space(&rows, RANK_TOL);
    if basis.len() != 1 {
        return Err(Error::Degenerate(format!(
            "expected a one-dimensional intersection, found {} directions",
            basis.len()
        )));
    }
    let mut x = [0.0; 4];
    x.copy_from_slice(&basis[0]);
    let norm = norm4(&x);
    for v in &mut x {
        *v /= norm;
    }
    // Unit vectors have a coordinate of magnitude >= 1/2, so the threshold
    // only skips noise.
    if let Some(&lead) = x.iter().find(|v| v.abs() > 1e-12) {
        if lead < 0.0 {
            for v in &mut x {
                *v = -*v;
            }
        }
    }
    Ok(x)
}

/// Epipolar residual `x'ᵀ F x`, evaluated as the two-step mode contraction
/// `F ×₍₁₎ x' ×₍₂₎ x` of the matrix viewed as an order-2 tensor. Zero for a
/// corresponding point pair.
pub fn epipolar_residual(f: &DenseTensor, x: &[f64], xp: &[f64]) -> Result<f64> {
    if f.order() != 2 {
        return Err(Error::Dimension(format!(
            "the epipolar form needs a matrix, got order {}",
            f.order()
        )));
    }
    let (rows, cols) = (f.shape()[0], f.shape()[1]);
    if xp.len() != rows || x.len() != cols {
        return Err(Error::Dimension(format!(
            "point lengths {} and {} do not match a {}x{} matrix",
            xp.len(),
            x.len(),
            rows,
            cols
        )));
    }
    if x.iter().all(|v| *v == 0.0) || xp.iter().all(|v| *v == 0.0) {
        return Err(Error::Argument("homogeneous points must be nonzero".into()));
    }
    let xp_col = DenseTensor::from_values(&[rows, 1], xp.to_vec())?;
    let x_col = DenseTensor::from_values(&[cols, 1], x.to_vec())?;
    let step = contract_mode(f, &xp_col, 0)?;
    let full = contract_mode(&step, &x_col, 1)?;
    Ok(full.values()[0])
}

/// The leave-one-out wedges `α^{(k)} = ⋀_{j≠k} a^j` of a generator family,
/// kept alongside the generators.
#[derive(Clone, Debug)]
pub struct WedgeFamily {
    generators: Vec<Vec<f64>>,
    wedges: Vec<AntisymTensor>,
}

impl WedgeFamily {
    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    /// `wedges()[k]` omits generator `k`, factors in ascending index order.
    pub fn wedges(&self) -> &[AntisymTensor] {
        &self.wedges
    }

    /// The `m × C(n, m-1)` matrix of flattened wedge coordinates, one row
    /// per leave-one-out wedge, columns in lexicographic index order.
    pub fn coordinate_matrix(&self) -> Vec<Vec<f64>> {
        use itertools::Itertools;
        let n = self.generators[0].len();
        let k = self.generators.len() - 1;
        self.wedges
            .iter()
            .map(|w| {
                (0..n)
                    .combinations(k)
                    .map(|combo| w.coord(&combo))
                    .collect()
            })
            .collect()
    }
}

/// Computes all leave-one-out wedges of a family of `m ≥ 2` vectors.
pub fn leave_one_out_wedges(generators: &[Vec<f64>]) -> Result<WedgeFamily> {
    let m = generators.len();
    if m < 2 {
        return Err(Error::Argument(
            "leave-one-out wedges need at least two generators".into(),
        ));
    }
    let n = generators[0].len();
    if generators.iter().any(|g| g.len() != n) {
        return Err(Error::Dimension(
            "all generators must share one dimension".into(),
        ));
    }
    if m > n {
        return Err(Error::Argument(format!(
            "cannot form wedge families of {} vectors in dimension {}",
            m, n
        )));
    }
    let wedges = (0..m)
        .map(|k| {
            let rest: Vec<Vec<f64>> = generators
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g.clone())
                .collect();
            grassmann_from_vectors(&rest)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WedgeFamily {
        generators: generators.to_vec(),
        wedges,
    })
}

/// Whether the leave-one-out wedges are linearly independent, decided by
/// the rank of the flattened coordinate matrix. True for every linearly
/// independent generator family.
pub fn wedge_family_independent(family: &WedgeFamily) -> bool {
    let m = family.generators().len();
    linalg::rank(&family.coordinate_matrix(), RANK_TOL) == m
}

/// A polytope in halfspace representation `{x : Aᵀx ≤ b}`, with the facet
/// normals `a^k` stored as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    columns: Vec<Vec<f64>>,
    offsets: Vec<f64>,
}

impl Polytope {
    /// `columns[k]` is the `k`-th facet normal; `offsets[k]` its bound.
    pub fn new(columns: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Argument(
                "a polytope needs at least one facet".into(),
            ));
        }
        let d = columns[0].len();
        if d == 0 || columns.iter().any(|c| c.len() != d) {
            return Err(Error::Dimension(
                "all facet normals must share one positive dimension".into(),
            ));
        }
        if columns.len() != offsets.len() {
            return Err(Error::Dimension(format!(
                "{} normals but {} offsets",
                columns.len(),
                offsets.len()
            )));
        }
        if let Some(k) = columns.iter().position(|c| c.iter().all(|v| *v == 0.0)) {
            return Err(Error::Argument(format!(
                "facet normal {} is the zero vector",
                k + 1
            )));
        }
        Ok(Self { columns, offsets })
    }

    pub fn dim(&self) -> usize {
        self.columns[0].len()
    }

    pub fn num_facets(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Rank of the normal matrix `A`.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.columns, RANK_TOL)
    }

    /// Halfspace membership `aᵏᵀx ≤ b_k + tol` for every facet.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "point length {} does not match polytope dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(self
            .columns
            .iter()
            .zip(&self.offsets)
            .all(|(col, &b)| col.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() <= b + tol))
    }

    /// Greedily picks the first `rank` linearly independent normal columns.
    pub fn default_basis(&self) -> Vec<usize> {
        let r = self.rank();
        let mut picked: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (k, col) in self.columns.iter().enumerate() {
            if picked.len() == r {
                break;
            }
            rows.push(col.clone());
            if linalg::rank(&rows, RANK_TOL) == rows.len() {
                picked.push(k);
            } else {
                rows.pop();
            }
        }
        picked
    }

    /// Residual of the wedge of the selected basis normals against `x`.
    ///
    /// The basis must select `rank(A)` independent columns. Because the
    /// leave-one-out wedges of an independent family are independent, the
    /// residual vanishes exactly when `x` is orthogonal to every selected
    /// normal, i.e. when `A_basisᵀ x = 0`.
    pub fn surface_residual(&self, basis: &[usize], x: &[f64]) -> Result<DenseTensor> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "point length {} does not match polytope dimension {}",
                x.len(),
                self.dim()
            )));
        }
        let r = self.rank();
        if basis.len() != r {
            return Err(Error::Argument(format!(
                "basis selects {} columns but the normal matrix has rank {}",
                basis.len(),
                r
            )));
        }
        let mut seen = vec![false; self.num_facets()];
        for &k in basis {
            if k >= self.num_facets() {
                return Err(Error::Argument(format!(
                    "basis index {} out of range for {} facets",
                    k + 1,
                    self.num_facets()
                )));
            }
            if seen[k] {
                return Err(Error::Argument(format!("basis index {} repeats", k + 1)));
            }
            seen[k] = true;
        }
        let selected: Vec<Vec<f64>> = basis.iter().map(|&k| self.columns[k].clone()).collect();
        if linalg::rank(&selected, RANK_TOL) != r {
            return Err(Error::Argument(
                "the selected columns are not linearly independent".into(),
            ));
        }
        let wedge = grassmann_from_vectors(&selected)?;
        tensor_point_residual(&wedge, x)
    }
}
