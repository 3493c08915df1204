//! Complex Clifford algebra of R^{1,n-1} in an explicit Kronecker realization.
//!
//! Conventions: `x·y + y·x = -2 g(x,y)` with `g = diag(-1, 1, ..., 1)`, so
//! `Γ_1² = I` and `Γ_j² = -I` for `j ≥ 2`. The Hermitian product is
//! antilinear in its first argument and `⟨φ,ψ⟩ = (Γ_1 φ, ψ)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type Spinor = DVector<C64>;

pub const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

fn mat2(a: [[C64; 2]; 2]) -> CMat {
    DMatrix::from_row_slice(2, 2, &[a[0][0], a[0][1], a[1][0], a[1][1]])
}

fn id2() -> CMat {
    CMat::identity(2, 2)
}

fn t_mat() -> CMat {
    mat2([[ZERO, -I], [I, ZERO]])
}

fn g1_mat() -> CMat {
    mat2([[I, ZERO], [ZERO, -I]])
}

fn g2_mat() -> CMat {
    mat2([[ZERO, I], [I, ZERO]])
}

fn kron_all(factors: &[CMat]) -> CMat {
    factors.iter().fold(CMat::identity(1, 1), |acc, f| acc.kronecker(f))
}

/// A matrix representation of the complex Clifford algebra of R^{1,n-1}.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    pub n: usize,
    pub m: usize,
    pub spinor_dim: usize,
    pub generators: Vec<CMat>,
    pub signature: Vec<f64>,
    /// `pairs[a][b] = Γ_a Γ_b`.
    pairs: Vec<Vec<CMat>>,
}

/// Build the Kronecker representation for `2 <= n <= 8`.
pub fn build_rep(n: usize) -> Result<CliffordRep> {
    if !(2..=8).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    let m = n / 2;
    let mut generators = Vec::with_capacity(n);
    for j in 1..=m {
        for (k, g) in [(2 * j - 1, g1_mat()), (2 * j, g2_mat())] {
            let mut factors = vec![id2(); m - j];
            factors.push(g);
            factors.extend(std::iter::repeat_n(t_mat(), j - 1));
            let tau = if k == 1 { I } else { ONE };
            generators.push(kron_all(&factors) * tau);
        }
    }
    if n % 2 == 1 {
        generators.push(kron_all(&vec![t_mat(); m]) * I);
    }
    Ok(CliffordRep::from_generators(generators))
}

/// The alternative 2×2 realization of Cl(1,2).
pub fn build_rep_alt3() -> CliffordRep {
    CliffordRep::from_generators(vec![
        mat2([[ZERO, I], [-I, ZERO]]),
        mat2([[ZERO, -I], [-I, ZERO]]),
        mat2([[I, ZERO], [ZERO, -I]]),
    ])
}

/// Cl(1,4) in the quaternionic model `H²`, written as complex 4×4 matrices
/// under `a + b·j ↦ (a, b)`.
pub fn build_rep_quaternionic5() -> CliffordRep {
    let z = CMat::zeros(2, 2);
    let one = CMat::identity(2, 2);
    let li = mat2([[I, ZERO], [ZERO, -I]]);
    let lj = mat2([[ZERO, -ONE], [ONE, ZERO]]);
    let lk = &li * &lj;
    let blk = |a: &CMat, b: &CMat, c: &CMat, d: &CMat| {
        let mut m = CMat::zeros(4, 4);
        m.view_mut((0, 0), (2, 2)).copy_from(a);
        m.view_mut((0, 2), (2, 2)).copy_from(b);
        m.view_mut((2, 0), (2, 2)).copy_from(c);
        m.view_mut((2, 2), (2, 2)).copy_from(d);
        m
    };
    CliffordRep::from_generators(vec![
        blk(&one, &z, &z, &-&one),
        blk(&z, &one, &-&one, &z),
        blk(&z, &li, &li, &z),
        blk(&z, &lj, &lj, &z),
        blk(&z, &lk, &lk, &z),
    ])
}

impl CliffordRep {
    fn from_generators(generators: Vec<CMat>) -> Self {
        let n = generators.len();
        let spinor_dim = generators[0].nrows();
        let mut signature = vec![1.0; n];
        signature[0] = -1.0;
        let pairs = generators
            .iter()
            .map(|a| generators.iter().map(|b| a * b).collect())
            .collect();
        CliffordRep {
            n,
            m: n / 2,
            spinor_dim,
            generators,
            signature,
            pairs,
        }
    }

    /// Cached product `Γ_a Γ_b`.
    pub fn pair(&self, a: usize, b: usize) -> &CMat {
        &self.pairs[a][b]
    }

    /// Identity on the spinor module.
    pub fn identity(&self) -> CMat {
        CMat::identity(self.spinor_dim, self.spinor_dim)
    }

    /// Zero spinor.
    pub fn zero_spinor(&self) -> Spinor {
        Spinor::zeros(self.spinor_dim)
    }

    /// Minkowski product of two real vectors.
    pub fn metric(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).zip(&self.signature).map(|((x, y), s)| s * x * y).sum()
    }

    /// Matrix of Clifford multiplication by `Σ v_j e_j`.
    pub fn vector_matrix(&self, v: &[f64]) -> Result<CMat> {
        self.check_len(v.len())?;
        let mut out = CMat::zeros(self.spinor_dim, self.spinor_dim);
        for (g, &c) in self.generators.iter().zip(v) {
            if c != 0.0 {
                out += g * C64::new(c, 0.0);
            }
        }
        Ok(out)
    }

    /// `(Σ v_j Γ_j)·φ`.
    pub fn vector_action(&self, v: &[f64], phi: &Spinor) -> Result<Spinor> {
        self.check_spinor(phi)?;
        Ok(self.vector_matrix(v)? * phi)
    }

    /// Clifford action of an alternating form of degree at most 3.
    pub fn form_action(&self, form: &Form, phi: &Spinor) -> Result<Spinor> {
        self.check_spinor(phi)?;
        Ok(self.form_matrix(form)? * phi)
    }

    /// Matrix of the Clifford action of a form.
    pub fn form_matrix(&self, form: &Form) -> Result<CMat> {
        if form.degree > 3 {
            return Err(Error::UnsupportedDegree(form.degree));
        }
        self.check_len(form.n)?;
        let mut out = CMat::zeros(self.spinor_dim, self.spinor_dim);
        for idx in increasing_tuples(self.n, form.degree) {
            let c = form.get(&idx);
            if c == 0.0 {
                continue;
            }
            let cc = C64::new(c, 0.0);
            match idx.len() {
                0 => out += self.identity() * cc,
                1 => out += &self.generators[idx[0]] * cc,
                2 => out += &self.pairs[idx[0]][idx[1]] * cc,
                _ => out += &self.pairs[idx[0]][idx[1]] * &self.generators[idx[2]] * cc,
            }
        }
        Ok(out)
    }

    /// Product `Γ_{i_1} ⋯ Γ_{i_k}` for an index list.
    pub fn monomial(&self, idx: &[usize]) -> CMat {
        idx.iter().fold(self.identity(), |acc, &i| acc * &self.generators[i])
    }

    /// Basis spinor `u(ν_1) ⊗ ⋯ ⊗ u(ν_m)` with `u(ν) = (1, -iν)/√2`.
    pub fn standard_basis_spinor(&self, nu: &[i8]) -> Result<Spinor> {
        if nu.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: nu.len(),
            });
        }
        if nu.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Precondition("ν entries must be ±1".into()));
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let factors: Vec<CMat> = nu
            .iter()
            .map(|&v| DMatrix::from_column_slice(2, 1, &[C64::new(s, 0.0), -I * (v as f64 * s)]))
            .collect();
        let col = kron_all(&factors);
        Ok(Spinor::from_column_slice(col.as_slice()))
    }

    /// All sign tuples of length `m`, in the order of their basis spinors.
    pub fn sign_tuples(&self) -> Vec<Vec<i8>> {
        (0..(1usize << self.m))
            .map(|bits| {
                (0..self.m)
                    .map(|k| if bits >> (self.m - 1 - k) & 1 == 0 { 1 } else { -1 })
                    .collect()
            })
            .collect()
    }

    /// Projector onto the span of `u(ν)` with `Π ν_i = parity`.
    pub fn parity_projector(&self, parity: i8) -> Result<CMat> {
        let mut p = CMat::zeros(self.spinor_dim, self.spinor_dim);
        for nu in self.sign_tuples() {
            if nu.iter().product::<i8>() == parity {
                let u = self.standard_basis_spinor(&nu)?;
                p += &u * u.adjoint();
            }
        }
        Ok(p)
    }

    /// `⟨φ,ψ⟩ = (Γ_1 φ, ψ)`.
    pub fn indefinite_inner(&self, phi: &Spinor, psi: &Spinor) -> C64 {
        hermitian(&(&self.generators[0] * phi), psi)
    }

    /// Largest deviation from `Γ_iΓ_j + Γ_jΓ_i = -2 ε_i δ_ij I`.
    pub fn clifford_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let gi = &self.generators[i];
                let gj = &self.generators[j];
                let mut a = gi * gj + gj * gi;
                if i == j {
                    a += self.identity() * C64::new(2.0 * self.signature[i], 0.0);
                }
                worst = worst.max(max_abs(&a));
            }
        }
        worst
    }

    /// Serializable dump of the generators.
    pub fn dump(&self) -> RepDump {
        RepDump {
            n: self.n,
            spinor_dim: self.spinor_dim,
            generators: self
                .generators
                .iter()
                .map(|g| {
                    (0..g.nrows())
                        .map(|r| (0..g.ncols()).map(|c| [g[(r, c)].re, g[(r, c)].im]).collect())
                        .collect()
                })
                .collect(),
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: len,
            });
        }
        Ok(())
    }

    fn check_spinor(&self, phi: &Spinor) -> Result<()> {
        if phi.len() != self.spinor_dim {
            return Err(Error::DimensionMismatch {
                expected: self.spinor_dim,
                got: phi.len(),
            });
        }
        Ok(())
    }
}

/// JSON form of a representation: generators as `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepDump {
    pub n: usize,
    pub spinor_dim: usize,
    pub generators: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Standard Hermitian product, antilinear in the first slot.
pub fn hermitian(a: &Spinor, b: &Spinor) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Euclidean norm of a spinor.
pub fn spinor_norm(phi: &Spinor) -> f64 {
    phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// All strictly increasing index tuples of length `k` from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Alternating tensor of degree `k` on an `n`-dimensional space, stored
/// densely in the `e_j` basis and kept antisymmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub n: usize,
    pub degree: usize,
    data: Vec<f64>,
}

fn permutation_sign(idx: &[usize]) -> (f64, Vec<usize>) {
    let mut v = idx.to_vec();
    let mut sign = 1.0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (sign, v)
}

impl Form {
    pub fn zero(n: usize, degree: usize) -> Self {
        Form {
            n,
            degree,
            data: vec![0.0; n.pow(degree as u32)],
        }
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    /// Component `ω_{i_1 … i_k}`.
    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    /// Set `ω_{idx}` and all its permutations consistently.
    pub fn set(&mut self, idx: &[usize], value: f64) {
        let (_, sorted) = permutation_sign(idx);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        for perm in permutations(&sorted) {
            let (s, _) = permutation_sign(&perm);
            let off = self.offset(&perm);
            let (s0, _) = permutation_sign(idx);
            self.data[off] = s * s0 * value;
        }
    }

    /// Build from values on increasing index tuples.
    pub fn from_fn(n: usize, degree: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut w = Form::zero(n, degree);
        for idx in increasing_tuples(n, degree) {
            let v = f(&idx);
            w.set(&idx, v);
        }
        w
    }

    /// Scalar (degree 0).
    pub fn scalar(n: usize, c: f64) -> Self {
        Form {
            n,
            degree: 0,
            data: vec![c],
        }
    }

    /// Vector as a 1-form.
    pub fn vector(v: &[f64]) -> Self {
        Form {
            n: v.len(),
            degree: 1,
            data: v.to_vec(),
        }
    }

    /// `v ∧ ω`.
    pub fn wedge_vector(&self, v: &[f64]) -> Form {
        let k = self.degree + 1;
        Form::from_fn(self.n, k, |idx| {
            let mut s = 0.0;
            for p in 0..k {
                let mut rest = idx.to_vec();
                let i = rest.remove(p);
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                s += sign * v[i] * self.get(&rest);
            }
            s
        })
    }

    /// `v ⌟ ω` with the Minkowski metric.
    pub fn contract_vector(&self, v: &[f64], signature: &[f64]) -> Form {
        assert!(self.degree >= 1, "cannot contract a scalar");
        let k = self.degree - 1;
        Form::from_fn(self.n, k, |idx| {
            (0..self.n)
                .map(|i| {
                    let mut full = vec![i];
                    full.extend_from_slice(idx);
                    v[i] * signature[i] * self.get(&full)
                })
                .sum()
        })
    }

    pub fn scale(&self, c: f64) -> Form {
        Form {
            n: self.n,
            degree: self.degree,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        Form {
            n: self.n,
            degree: self.degree,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Kind of an antilinear structure on the spinor module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureKind {
    Real,
    Quaternionic,
}

/// Antilinear map `φ ↦ A·conj(φ)`.
#[derive(Clone, Debug)]
pub struct StructureMap {
    pub kind: StructureKind,
    pub matrix: CMat,
    /// Sign `s` in `A·conj(Γ_j) = s·Γ_j·A`.
    pub commutation_sign: f64,
    /// Sign `c` in `A·conj(A) = c·I`.
    pub square: f64,
}

impl StructureMap {
    pub fn apply(&self, phi: &Spinor) -> Spinor {
        &self.matrix * phi.map(|z| z.conj())
    }
}

/// Solve for the antilinear structure commuting or anticommuting with
/// Clifford multiplication, for `n ∈ {3, 5, 7}`.
pub fn build_structure_map(rep: &CliffordRep) -> Result<StructureMap> {
    if ![3, 5, 7].contains(&rep.n) {
        return Err(Error::NoStructureMap(rep.n));
    }
    let d = rep.spinor_dim;
    for sign in [-1.0, 1.0] {
        let s = C64::new(sign, 0.0);
        let mut rows = CMat::zeros(rep.n * d * d, d * d);
        for (j, g) in rep.generators.iter().enumerate() {
            let gc = g.map(|z| z.conj());
            let right = gc.transpose().kronecker(&CMat::identity(d, d));
            let left = CMat::identity(d, d).kronecker(g) * s;
            rows.view_mut((j * d * d, 0), (d * d, d * d)).copy_from(&(right - left));
        }
        let null = nullspace(&rows, 1e-9);
        if null.len() != 1 {
            continue;
        }
        let a = CMat::from_column_slice(d, d, null[0].as_slice());
        let aa = &a * a.map(|z| z.conj());
        let c = aa[(0, 0)];
        if c.norm() < 1e-12 || c.im.abs() > 1e-9 * c.norm() {
            continue;
        }
        let mut a = a / C64::new(c.norm().sqrt(), 0.0);
        if let Some(first) = a.iter().find(|z| z.norm() > 1e-9).copied() {
            a *= first.conj() / first.norm();
        }
        let square = c.re.signum();
        let kind = if square > 0.0 {
            StructureKind::Real
        } else {
            StructureKind::Quaternionic
        };
        return Ok(StructureMap {
            kind,
            matrix: a,
            commutation_sign: sign,
            square,
        });
    }
    Err(Error::NoStructureMap(rep.n))
}

/// Orthonormal basis of the numerical nullspace of `m`.
pub fn nullspace(m: &CMat, tol: f64) -> Vec<DVector<C64>> {
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = CMat::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested v_t");
    let scale = svd.singular_values.iter().fold(1.0f64, |a, &b| a.max(b));
    (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= tol * scale)
        .map(|k| vt.row(k).adjoint())
        .collect()
}

/// Spin-group element `exp(½ Σ_{a<b} ω_ab Γ_a Γ_b)` for real coefficients.
pub fn spin_element(rep: &CliffordRep, omega: &Form) -> Result<CMat> {
    if omega.degree != 2 {
        return Err(Error::Precondition("spin element needs a 2-form".into()));
    }
    Ok((rep.form_matrix(omega)? * C64::new(0.5, 0.0)).exp())
}

/// Vector representation `Λ(s)` defined by `s Γ(X) s⁻¹ = Γ(Λ(s) X)`.
pub fn vector_rep(rep: &CliffordRep, s: &CMat) -> Result<DMatrix<f64>> {
    let sinv = s
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Precondition("spin element not invertible".into()))?;
    let mut lam = DMatrix::zeros(rep.n, rep.n);
    let norm = rep.spinor_dim as f64;
    for j in 0..rep.n {
        let conj = s * &rep.generators[j] * &sinv;
        for i in 0..rep.n {
            // Γ_i⁻¹ = -ε_i Γ_i.
            let gi = &rep.generators[i];
            let tr: C64 = (0..rep.spinor_dim)
                .map(|r| gi.row(r).transpose().component_mul(&conj.column(r)).sum())
                .sum();
            lam[(i, j)] = (tr * C64::new(-rep.signature[i], 0.0) / norm).re;
        }
    }
    Ok(lam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_generators_by_hand() {
        let rep = build_rep(2).unwrap();
        let g1 = &rep.generators[0];
        assert!((g1[(0, 0)] - C64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((g1[(1, 1)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        let g2 = &rep.generators[1];
        assert!((g2[(0, 1)] - I).norm() < 1e-15 && (g2[(1, 0)] - I).norm() < 1e-15);
    }

    #[test]
    fn clifford_relations_all_dims() {
        for n in 2..=8 {
            let rep = build_rep(n).unwrap();
            assert_eq!(rep.spinor_dim, 1 << (n / 2));
            assert!(rep.clifford_residual() < 1e-12, "n={n}");
        }
        assert!(build_rep_alt3().clifford_residual() < 1e-12);
    }

    #[test]
    fn range_errors() {
        assert!(matches!(build_rep(1), Err(Error::DimensionOutOfRange(1))));
        assert!(matches!(build_rep(9), Err(Error::DimensionOutOfRange(9))));
    }

    #[test]
    fn basis_spinor_values() {
        let rep = build_rep(2).unwrap();
        let u = rep.standard_basis_spinor(&[1]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u[0] - C64::new(s, 0.0)).norm() < 1e-15);
        assert!((u[1] - C64::new(0.0, -s)).norm() < 1e-15);
        let e1u = rep.vector_action(&[1.0, 0.0], &u).unwrap();
        let um = rep.standard_basis_spinor(&[-1]).unwrap();
        assert!(spinor_norm(&(e1u + &um)) < 1e-15);
        let e2u = rep.vector_action(&[0.0, 1.0], &u).unwrap();
        assert!(spinor_norm(&(e2u - &um)) < 1e-15);
        assert!(rep.indefinite_inner(&u, &u).norm() < 1e-15);
    }

    #[test]
    fn basis_orthonormal() {
        let rep = build_rep(6).unwrap();
        let tuples = rep.sign_tuples();
        for a in &tuples {
            for b in &tuples {
                let ua = rep.standard_basis_spinor(a).unwrap();
                let ub = rep.standard_basis_spinor(b).unwrap();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((hermitian(&ua, &ub) - C64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
        let r4 = build_rep(4).unwrap();
        let u = r4.standard_basis_spinor(&[1, -1]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u1 = [C64::new(s, 0.0), C64::new(0.0, -s)];
        let u2 = [C64::new(s, 0.0), C64::new(0.0, s)];
        for i in 0..2 {
            for j in 0..2 {
                assert!((u[2 * i + j] - u1[i] * u2[j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn structure_maps() {
        let alt = build_structure_map(&build_rep_alt3()).unwrap();
        let ph = alt.matrix[(0, 0)];
        assert!((&alt.matrix - CMat::identity(2, 2) * ph)
            .iter()
            .all(|z| z.norm() < 1e-12));
        for (n, sign, sq) in [(3, -1.0, 1.0), (5, 1.0, -1.0), (7, -1.0, -1.0)] {
            let rep = build_rep(n).unwrap();
            let j = build_structure_map(&rep).unwrap();
            assert_eq!(j.commutation_sign, sign);
            assert_eq!(j.square, sq);
            let jj = &j.matrix * j.matrix.map(|z| z.conj());
            let target = rep.identity() * C64::new(sq, 0.0);
            assert!(max_abs(&(jj - target)) < 1e-12);
        }
        assert!(build_structure_map(&build_rep(4).unwrap()).is_err());
    }

    #[test]
    fn form_set_antisymmetric() {
        let mut w = Form::zero(4, 3);
        w.set(&[2, 0, 1], 1.5);
        assert_eq!(w.get(&[0, 1, 2]), 1.5);
        assert_eq!(w.get(&[1, 0, 2]), -1.5);
        assert_eq!(w.get(&[0, 0, 2]), 0.0);
    }

    #[test]
    fn monomial_two_form() {
        let rep = build_rep(4).unwrap();
        let mut w = Form::zero(4, 2);
        w.set(&[0, 1], 1.0);
        let m = rep.form_matrix(&w).unwrap();
        let expect = &rep.generators[0] * &rep.generators[1];
        assert!(max_abs(&(m - expect)) < 1e-15);
    }
}
