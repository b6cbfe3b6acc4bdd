#![allow(clippy::needless_range_loop)] // oracle code favors explicit indices

//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them). Random trials use fixed seeds.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use plucker::grassmann::{
    antisymmetrize, commutation_tensor, grassmann_from_vectors, identity_wedge, sign_tensor, wedge,
    wedge_vec,
};
use plucker::linalg;
use plucker::multiview::{
    intersect_planes, leave_one_out_wedges, plane_membership_residual, plane_tensor,
    plucker_equivalent, plucker_line, tensor_point_residual, wedge_family_independent, Polytope,
};
use plucker::tensor::{
    contract_paired, contract_paired_front, outer, outer_product, DenseTensor, ModeAssignment,
};

// ---------------------------------------------------------------------------
// Test-side oracles, kept independent of the library's elimination kernels.
// ---------------------------------------------------------------------------

/// Laplace (cofactor) expansion along the first row.
fn laplace_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0.0;
    for j in 0..n {
        let minor: Vec<Vec<f64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * m[0][j] * laplace_det(&minor);
    }
    acc
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(m).collect()
}

fn int_vector(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-5..=5) as f64).collect()
}

fn real_vector(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn unit_vector(rng: &mut StdRng, n: usize) -> Vec<f64> {
    loop {
        let v = real_vector(rng, n);
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.1 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rank_oracle(rows: &[Vec<f64>]) -> usize {
    linalg::rank(rows, 1e-10)
}

fn rank_one_outer(family: &[Vec<f64>]) -> DenseTensor {
    let mut t = DenseTensor::vector(&family[0]);
    for v in &family[1..] {
        t = outer(&t, &DenseTensor::vector(v)).unwrap();
    }
    t
}

fn minor_of(family: &[Vec<f64>], rows: &[usize]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|&r| family.iter().map(|v| v[r]).collect())
        .collect()
}

fn arr4(v: &[f64]) -> [f64; 4] {
    [v[0], v[1], v[2], v[3]]
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

/// Every Plücker coordinate equals the Laplace determinant of its row
/// minor, exactly on integers, and the dense expansion equals the
/// antisymmetrized outer product entrywise.
#[test]
fn c01_determinant_entry_oracle() {
    let mut rng = StdRng::seed_from_u64(101);
    for _ in 0..200 {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(1..=n.min(4));
        let family: Vec<Vec<f64>> = (0..m).map(|_| int_vector(&mut rng, n)).collect();
        let t = grassmann_from_vectors(&family).unwrap();
        for rows in combinations(n, m) {
            let expected = laplace_det(&minor_of(&family, &rows));
            assert_eq!(t.coord(&rows), expected, "minor at rows {:?}", rows);
        }
        let dense = t.to_dense().unwrap();
        let expected = antisymmetrize(&rank_one_outer(&family)).unwrap();
        assert_eq!(dense, expected);
    }
    println!("criterion 1 (determinant-entry oracle): PASS");
}

/// The homogeneous form of a Grassmann tensor is the zero polynomial.
#[test]
fn c02_zero_polynomial() {
    let mut rng = StdRng::seed_from_u64(102);
    for _ in 0..1000 {
        let n = rng.random_range(2..=6);
        // The signed permutation sum only vanishes from order 2 on.
        let m = rng.random_range(2..=n.min(4));
        let family: Vec<Vec<f64>> = (0..m).map(|_| real_vector(&mut rng, n)).collect();
        let x = real_vector(&mut rng, n);
        let dense = grassmann_from_vectors(&family).unwrap().to_dense().unwrap();
        let value = plucker::tensor::poly_eval(&dense, &x).unwrap();
        let scale: f64 = family.iter().map(|v| norm(v)).product::<f64>() * norm(&x).powi(m as i32);
        assert!(
            value.abs() <= 1e-9 * scale,
            "form value {} exceeds tolerance at scale {}",
            value,
            scale
        );
    }
    println!("criterion 2 (zero polynomial): PASS");
}

/// Dense nonzero count is bounded by n!/(n-m)! and generically attains it.
#[test]
fn c03_nonzero_count_bound() {
    let mut rng = StdRng::seed_from_u64(103);
    let mut tight = 0usize;
    let trials = 200usize;
    for _ in 0..trials {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(1..=n.min(4));
        let family: Vec<Vec<f64>> = (0..m).map(|_| real_vector(&mut rng, n)).collect();
        let dense = grassmann_from_vectors(&family).unwrap().to_dense().unwrap();
        let nonzeros = dense.values().iter().filter(|v| **v != 0.0).count();
        let bound: usize = (n - m + 1..=n).product();
        assert!(
            nonzeros <= bound,
            "{} nonzeros exceed bound {}",
            nonzeros,
            bound
        );
        if nonzeros == bound {
            tight += 1;
        }
    }
    assert!(
        tight * 100 >= trials * 95,
        "bound tight on only {}/{} trials",
        tight,
        trials
    );
    println!("criterion 3 (nonzero-count bound): PASS");
}

/// A full family of n vectors in R^n collapses to det(A) times the sign
/// tensor, exactly on integers.
#[test]
fn c04_full_family_collapse() {
    let mut rng = StdRng::seed_from_u64(104);
    for n in 2..=4usize {
        for _ in 0..50 {
            let family: Vec<Vec<f64>> = (0..n).map(|_| int_vector(&mut rng, n)).collect();
            let t = grassmann_from_vectors(&family).unwrap().to_dense().unwrap();
            let d = laplace_det(&minor_of(&family, &(0..n).collect::<Vec<_>>()));
            let h = sign_tensor(n).unwrap().to_dense().unwrap();
            for (a, b) in t.values().iter().zip(h.values()) {
                assert_eq!(*a, d * b);
            }
        }
    }
    println!("criterion 4 (full-family collapse): PASS");
}

/// The six two-of-four wedge terms carry signs + - + + - +.
#[test]
fn c05a_wedge_sign_pattern() {
    let mut rng = StdRng::seed_from_u64(105);
    let thetas: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let signs = [1.0, -1.0, 1.0, 1.0, -1.0, 1.0];
    for _ in 0..20 {
        let n = rng.random_range(2..=4);
        let a =
            DenseTensor::from_rows(&(0..n).map(|_| int_vector(&mut rng, n)).collect::<Vec<_>>())
                .unwrap();
        let b =
            DenseTensor::from_rows(&(0..n).map(|_| int_vector(&mut rng, n)).collect::<Vec<_>>())
                .unwrap();
        let mut expected = DenseTensor::zeros(&[n; 4]).unwrap();
        for (theta, sign) in thetas.iter().zip(signs) {
            let assign = ModeAssignment::new(4, theta).unwrap();
            assert_eq!(f64::from(assign.shuffle_sign()), sign);
            expected.add_scaled(&outer_product(&a, &b, &assign).unwrap(), sign);
        }
        assert_eq!(wedge(&a, &b).unwrap(), expected);
    }
    println!("criterion 5a (sign pattern of the six wedge terms): PASS");
}

/// A ∧ A = 2(A×A) for rank-one matrices, to 1e-12 relative.
#[test]
fn c05b_wedge_square_rank_one() {
    let mut rng = StdRng::seed_from_u64(1055);
    for _ in 0..50 {
        let n = rng.random_range(2..=4);
        let u = DenseTensor::vector(&real_vector(&mut rng, n));
        let v = DenseTensor::vector(&real_vector(&mut rng, n));
        let a = outer(&u, &v).unwrap();
        let w = wedge(&a, &a).unwrap();
        let mut doubled = outer(&a, &a).unwrap();
        doubled.scale(2.0);
        let scale = doubled.max_abs().max(w.max_abs());
        for (x, y) in w.values().iter().zip(doubled.values()) {
            assert!((x - y).abs() <= 1e-12 * scale);
        }
    }
    println!("criterion 5b (wedge square of rank-one matrices): PASS");
}

/// A ∧ A = 2(A×A) asserted for random symmetric matrices.
///
/// The expansion A∧A = 2(A×A - A×₍₁,₃₎A + A×₍₁,₄₎A) shows the cross terms
/// cancel only when A_{ik}A_{jl} = A_{il}A_{jk} for all indices, i.e. when
/// every 2×2 minor of A vanishes (rank ≤ 1). A random symmetric matrix has
/// full rank, so this identity cannot hold for it; the assertion is kept
/// as stated and fails.
#[test]
fn c05c_wedge_square_symmetric() {
    let mut rng = StdRng::seed_from_u64(1056);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(2..=4);
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.random_range(-1.0..1.0);
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        let a = DenseTensor::from_rows(&rows).unwrap();
        let w = wedge(&a, &a).unwrap();
        let mut doubled = outer(&a, &a).unwrap();
        doubled.scale(2.0);
        let scale = doubled.max_abs().max(w.max_abs());
        for (x, y) in w.values().iter().zip(doubled.values()) {
            worst = worst.max((x - y).abs() / scale);
        }
    }
    println!(
        "criterion 5c (wedge square of symmetric matrices): FAIL expected; \
         worst relative deviation {:.3e} (identity requires rank <= 1)",
        worst
    );
    assert!(
        worst <= 1e-12,
        "A∧A = 2(A×A) fails for full-rank symmetric A: relative deviation {:.3e}",
        worst
    );
}

/// Trace projector and commutation tensor identities for n ≤ 5.
#[test]
fn c05d_trace_projector_and_commutation() {
    let mut rng = StdRng::seed_from_u64(1057);
    for n in 2..=5usize {
        let j = identity_wedge(n).unwrap();
        let k = commutation_tensor(n).unwrap();
        for _ in 0..20 {
            let x = DenseTensor::from_rows(
                &(0..n).map(|_| real_vector(&mut rng, n)).collect::<Vec<_>>(),
            )
            .unwrap();
            let trace: f64 = (0..n).map(|i| x.get(&[i, i])).sum();
            let jx = contract_paired(&j, &x).unwrap();
            let mut expected = DenseTensor::identity(n);
            expected.scale(2.0 * trace);
            let scale = x.max_abs().max(1.0);
            for (a, b) in jx.values().iter().zip(expected.values()) {
                assert!((a - b).abs() <= 1e-12 * scale);
            }
            let kx = contract_paired(&k, &x).unwrap();
            let xk = contract_paired_front(&k, &x).unwrap();
            for ((a, b), c) in kx.values().iter().zip(x.values()).zip(xk.values()) {
                assert!((a - b).abs() <= 1e-12 * scale);
                assert!((c - b).abs() <= 1e-12 * scale);
            }
        }
    }
    println!("criterion 5d (trace projector and commutation tensor): PASS");
}

/// (a∧b)∧c equals the three-vector Grassmann tensor exactly on integers.
#[test]
fn c05e_vector_wedge_association() {
    let mut rng = StdRng::seed_from_u64(1058);
    for _ in 0..50 {
        let n = rng.random_range(3..=6);
        let a = int_vector(&mut rng, n);
        let b = int_vector(&mut rng, n);
        let c = int_vector(&mut rng, n);
        let ab = wedge(&DenseTensor::vector(&a), &DenseTensor::vector(&b)).unwrap();
        let left = wedge_vec(&ab, &c).unwrap();
        let expected = grassmann_from_vectors(&[a, b, c])
            .unwrap()
            .to_dense()
            .unwrap();
        assert_eq!(left, expected);
    }
    println!("criterion 5e (vector wedge association): PASS");
}

/// Line-matrix equivalence recovers det(Q) and rejects distinct spans.
#[test]
fn c06_plucker_equivalence_round_trip() {
    let mut rng = StdRng::seed_from_u64(106);
    let mut done = 0usize;
    while done < 200 {
        let x = arr4(&real_vector(&mut rng, 4));
        let y = arr4(&real_vector(&mut rng, 4));
        let p = plucker_line(x, y);
        if p.max_abs() < 1e-3 {
            continue;
        }
        let q: [[f64; 2]; 2] = [
            [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
            [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
        ];
        let det_q = q[0][0] * q[1][1] - q[0][1] * q[1][0];
        if !(0.1..=10.0).contains(&det_q.abs()) {
            continue;
        }
        let mut xp = [0.0; 4];
        let mut yp = [0.0; 4];
        for i in 0..4 {
            xp[i] = q[0][0] * x[i] + q[0][1] * y[i];
            yp[i] = q[1][0] * x[i] + q[1][1] * y[i];
        }
        let pp = plucker_line(xp, yp);
        let lambda = plucker_equivalent(&pp, &p, 1e-9)
            .unwrap()
            .expect("equivalent pairs must relate by a scale");
        assert!(
            (lambda - det_q).abs() <= 1e-9 * det_q.abs(),
            "recovered {} against det Q = {}",
            lambda,
            det_q
        );
        done += 1;
    }
    let mut rejected = 0usize;
    while rejected < 200 {
        let p1 = plucker_line(
            arr4(&real_vector(&mut rng, 4)),
            arr4(&real_vector(&mut rng, 4)),
        );
        let p2 = plucker_line(
            arr4(&real_vector(&mut rng, 4)),
            arr4(&real_vector(&mut rng, 4)),
        );
        if p1.max_abs() < 1e-3 || p2.max_abs() < 1e-3 {
            continue;
        }
        let (x1, y1) = p1.generators().unwrap();
        let (x2, y2) = p2.generators().unwrap();
        let stack = vec![x1.to_vec(), y1.to_vec(), x2.to_vec(), y2.to_vec()];
        if rank_oracle(&stack) != 4 {
            continue;
        }
        assert!(plucker_equivalent(&p1, &p2, 1e-9).unwrap().is_none());
        rejected += 1;
    }
    println!("criterion 6 (line-matrix equivalence round trip): PASS");
}

/// Plane and intersection duals: the contraction residual of a wedge of
/// three covectors (resp. points) vanishes exactly when the three
/// homogeneous incidence equations hold; point membership in the spanned
/// plane coincides with the order-4 collapse residual.
#[test]
fn c07_plane_and_intersection_duals() {
    let mut rng = StdRng::seed_from_u64(107);

    // Intersection: three planes, their common point, and off points.
    let mut trials = 0usize;
    while trials < 500 {
        let a1 = arr4(&unit_vector(&mut rng, 4));
        let a2 = arr4(&unit_vector(&mut rng, 4));
        let a3 = arr4(&unit_vector(&mut rng, 4));
        let rows = vec![a1.to_vec(), a2.to_vec(), a3.to_vec()];
        if rank_oracle(&rows) != 3 {
            continue;
        }
        let t = grassmann_from_vectors(&rows).unwrap();
        let scale = t.max_abs_coord().max(1e-6);
        let is_zero = |x: &[f64]| {
            tensor_point_residual(&t, x).unwrap().max_abs() <= 1e-9 * scale * norm(x).max(1.0)
        };
        let lin_zero = |x: &[f64]| rows.iter().map(|r| dot(r, x).abs()).fold(0.0, f64::max) <= 1e-9;

        let x = intersect_planes(a1, a2, a3).unwrap();
        assert!(
            lin_zero(&x) && is_zero(&x),
            "common point must satisfy both"
        );
        let y = unit_vector(&mut rng, 4);
        let lin = rows.iter().map(|r| dot(r, &y).abs()).fold(0.0, f64::max);
        if lin < 1e-3 {
            continue;
        }
        assert!(
            !lin_zero(&y) && !is_zero(&y),
            "off point must fail both conditions"
        );
        trials += 1;
    }

    // Plane dual: three points; the residual singles out the plane
    // covector, and the order-4 collapse singles out span membership.
    let mut trials = 0usize;
    while trials < 500 {
        let p1 = arr4(&unit_vector(&mut rng, 4));
        let p2 = arr4(&unit_vector(&mut rng, 4));
        let p3 = arr4(&unit_vector(&mut rng, 4));
        let rows = vec![p1.to_vec(), p2.to_vec(), p3.to_vec()];
        if rank_oracle(&rows) != 3 {
            continue;
        }
        let t = plane_tensor(p1, p2, p3).unwrap();
        let scale = t.max_abs_coord().max(1e-6);

        // Incidence direction: the null covector annihilates the tensor.
        let covector = arr4(&linalg::null_space(&rows, 1e-10)[0]);
        let residual = tensor_point_residual(&t, &covector).unwrap();
        assert!(residual.max_abs() <= 1e-9 * scale * norm(&covector));
        assert!(rows
            .iter()
            .all(|r| dot(r, &covector).abs() <= 1e-9 * norm(&covector)));
        let y = unit_vector(&mut rng, 4);
        let incidence = rows.iter().map(|r| dot(r, &y).abs()).fold(0.0, f64::max);
        if incidence < 1e-3 {
            continue;
        }
        assert!(tensor_point_residual(&t, &y).unwrap().max_abs() > 1e-9 * scale);

        // Membership direction: span membership equals the collapse test.
        let coeffs = real_vector(&mut rng, 3);
        let mut w = [0.0; 4];
        for i in 0..4 {
            w[i] = coeffs[0] * p1[i] + coeffs[1] * p2[i] + coeffs[2] * p3[i];
        }
        let memb_scale = scale * norm(&w).max(1e-6);
        assert!(plane_membership_residual(&t, &w).unwrap().abs() <= 1e-9 * memb_scale);
        let z = arr4(&unit_vector(&mut rng, 4));
        let mut stacked = rows.clone();
        stacked.push(z.to_vec());
        let lin_member = rank_oracle(&stacked) == 3;
        let tens_member = plane_membership_residual(&t, &z).unwrap().abs() <= 1e-9 * scale;
        assert_eq!(lin_member, tens_member, "membership tests must agree");
        trials += 1;
    }
    println!("criterion 7 (plane and intersection duals): PASS");
}

/// Leave-one-out wedges of independent families are independent and lose
/// rank when the family is made dependent.
#[test]
fn c08_wedge_family_independence() {
    let mut rng = StdRng::seed_from_u64(108);
    let mut trials = 0usize;
    while trials < 100 {
        let m = rng.random_range(3..=5);
        let n = rng.random_range(m..=6);
        let family: Vec<Vec<f64>> = (0..m).map(|_| real_vector(&mut rng, n)).collect();
        if rank_oracle(&family) != m {
            continue;
        }
        let wedges = leave_one_out_wedges(&family).unwrap();
        assert!(
            wedge_family_independent(&wedges),
            "independent family, trial {}",
            trials
        );
        let mut spoiled = family.clone();
        spoiled[m - 1] = family[0].clone();
        let spoiled_wedges = leave_one_out_wedges(&spoiled).unwrap();
        assert!(
            !wedge_family_independent(&spoiled_wedges),
            "duplicated generator must break independence"
        );
        trials += 1;
    }
    println!("criterion 8 (wedge-family independence): PASS");
}

/// Polytope surface residual vanishes exactly when the selected normals
/// annihilate the point.
#[test]
fn c09_polytope_residual_equivalence() {
    let mut rng = StdRng::seed_from_u64(109);
    let mut trials = 0usize;
    while trials < 200 {
        let d = rng.random_range(3..=6);
        let r = rng.random_range(2..d);
        let mut columns: Vec<Vec<f64>> = (0..r).map(|_| unit_vector(&mut rng, d)).collect();
        if rank_oracle(&columns) != r {
            continue;
        }
        // Pad with dependent columns so the basis is a proper subset.
        let extra = rng.random_range(0..=2);
        for _ in 0..extra {
            let c = real_vector(&mut rng, r);
            let mut col = vec![0.0; d];
            for (w, base) in c.iter().zip(&columns) {
                for (x, b) in col.iter_mut().zip(base) {
                    *x += w * b;
                }
            }
            if col.iter().all(|v| *v == 0.0) {
                col[0] = 1e-3;
            }
            columns.push(col);
        }
        let offsets = vec![1.0; columns.len()];
        let w = Polytope::new(columns.clone(), offsets).unwrap();
        let basis: Vec<usize> = (0..r).collect();
        let scale: f64 = basis.iter().map(|&k| norm(&columns[k])).product();

        let tensor_zero = |x: &[f64]| {
            w.surface_residual(&basis, x).unwrap().max_abs() <= 1e-9 * scale * norm(x).max(1.0)
        };
        let linear_zero = |x: &[f64]| {
            basis
                .iter()
                .map(|&k| dot(&columns[k], x).abs())
                .fold(0.0, f64::max)
                <= 1e-9
        };

        // Positive: a point of the orthogonal complement of the basis.
        let null = linalg::null_space(
            &basis
                .iter()
                .map(|&k| columns[k].clone())
                .collect::<Vec<_>>(),
            1e-10,
        );
        assert!(!null.is_empty());
        let coeffs = real_vector(&mut rng, null.len());
        let mut x = vec![0.0; d];
        for (c, dir) in coeffs.iter().zip(&null) {
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi += c * di;
            }
        }
        assert_eq!(linear_zero(&x), tensor_zero(&x));
        assert!(tensor_zero(&x), "orthogonal point must have zero residual");

        // Negative: a point with a solidly nonzero normal product.
        let y = unit_vector(&mut rng, d);
        let violation = basis
            .iter()
            .map(|&k| dot(&columns[k], &y).abs())
            .fold(0.0, f64::max);
        if violation < 1e-3 {
            continue;
        }
        assert_eq!(linear_zero(&y), tensor_zero(&y));
        assert!(!tensor_zero(&y), "non-orthogonal point must have residual");
        trials += 1;
    }
    println!("criterion 9 (polytope residual equivalence): PASS");
}
