//! Truncated multivariate Taylor polynomials.
//!
//! A [`Jet`] stores the Taylor coefficients of a scalar function of `n`
//! variables around a base point, up to total degree `order`. Arithmetic and
//! elementary functions act on the whole expansion, so evaluating a metric on
//! seeded coordinate jets yields all of its partial derivatives exactly.

use std::collections::HashMap;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

/// Monomial bookkeeping shared by all jets with the same `(n, order)`.
#[derive(Debug)]
pub struct Table {
    n: usize,
    order: usize,
    monos: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    degree: Vec<usize>,
    products: Vec<(u32, u32, u32)>,
}

impl Table {
    fn build(n: usize, order: usize) -> Self {
        let mut monos: Vec<Vec<u8>> = Vec::new();
        for d in 0..=order {
            let mut cur = vec![0u8; n];
            push_degree(&mut monos, &mut cur, 0, d);
        }
        let index: HashMap<Vec<u8>, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let degree: Vec<usize> = monos.iter().map(|m| m.iter().map(|&e| e as usize).sum()).collect();
        let mut products = Vec::new();
        for (a, ma) in monos.iter().enumerate() {
            for (b, mb) in monos.iter().enumerate() {
                if degree[a] + degree[b] > order {
                    continue;
                }
                let sum: Vec<u8> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                products.push((a as u32, b as u32, index[&sum] as u32));
            }
        }
        Table {
            n,
            order,
            monos,
            index,
            degree,
            products,
        }
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Truncation order.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.monos.len()
    }

    /// Always false: the constant monomial is present.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exponent vectors in storage order.
    pub fn monomials(&self) -> &[Vec<u8>] {
        &self.monos
    }

    /// Storage index of an exponent vector.
    pub fn index_of(&self, mono: &[u8]) -> Option<usize> {
        self.index.get(mono).copied()
    }

    /// Number of monomials of total degree at most `d`.
    fn prefix(&self, d: usize) -> usize {
        self.degree.iter().take_while(|&&k| k <= d).count()
    }
}

fn push_degree(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, pos: usize, left: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = left as u8;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k as u8;
        push_degree(out, cur, pos + 1, left - k);
    }
    cur[pos] = 0;
}

type TableCache = Mutex<HashMap<(usize, usize), Arc<Table>>>;

/// Shared table for `n` variables truncated at `order`.
pub fn table(n: usize, order: usize) -> Arc<Table> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("jet table cache poisoned");
    guard
        .entry((n, order))
        .or_insert_with(|| Arc::new(Table::build(n, order)))
        .clone()
}

/// Truncated Taylor expansion of a scalar function.
#[derive(Clone, Debug)]
pub struct Jet {
    tab: Arc<Table>,
    c: Vec<f64>,
}

impl Jet {
    /// Constant jet.
    pub fn constant(tab: &Arc<Table>, v: f64) -> Self {
        let mut c = vec![0.0; tab.len()];
        c[0] = v;
        Jet { tab: tab.clone(), c }
    }

    /// Coordinate jet `x_i` expanded at value `v`.
    pub fn variable(tab: &Arc<Table>, i: usize, v: f64) -> Self {
        let mut j = Jet::constant(tab, v);
        if tab.order >= 1 {
            let mut mono = vec![0u8; tab.n];
            mono[i] = 1;
            let k = tab.index[&mono];
            j.c[k] = 1.0;
        }
        j
    }

    /// Coordinate jets for a base point.
    pub fn seed(x: &[f64], order: usize) -> Vec<Jet> {
        let tab = table(x.len(), order);
        x.iter().enumerate().map(|(i, &v)| Jet::variable(&tab, i, v)).collect()
    }

    /// Jet from raw Taylor coefficients in table order.
    pub fn from_coefficients(tab: &Arc<Table>, c: Vec<f64>) -> Self {
        assert_eq!(c.len(), tab.len(), "coefficient count mismatch");
        Jet { tab: tab.clone(), c }
    }

    /// A constant with the same table as `self`.
    pub fn lift(&self, v: f64) -> Self {
        Jet::constant(&self.tab, v)
    }

    /// Table handle.
    pub fn table(&self) -> &Arc<Table> {
        &self.tab
    }

    /// Truncation order.
    pub fn order(&self) -> usize {
        self.tab.order
    }

    /// Value at the base point.
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Raw Taylor coefficients.
    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    /// Partial derivative `∂^α f` at the base point.
    pub fn partial(&self, mono: &[u8]) -> f64 {
        match self.tab.index_of(mono) {
            Some(k) => {
                let fact: f64 = mono.iter().map(|&e| factorial(e as usize)).product();
                self.c[k] * fact
            }
            None => panic!("monomial beyond jet order"),
        }
    }

    /// First partial derivative `∂_i f` at the base point.
    pub fn d1(&self, i: usize) -> f64 {
        let mut m = vec![0u8; self.tab.n];
        m[i] = 1;
        self.partial(&m)
    }

    /// Second partial derivative `∂_i ∂_j f` at the base point.
    pub fn d2(&self, i: usize, j: usize) -> f64 {
        let mut m = vec![0u8; self.tab.n];
        m[i] += 1;
        m[j] += 1;
        self.partial(&m)
    }

    /// Drop all terms above degree `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        if order >= self.tab.order {
            return self.clone();
        }
        let tab = table(self.tab.n, order);
        let k = self.tab.prefix(order);
        Jet {
            tab,
            c: self.c[..k].to_vec(),
        }
    }

    /// The same expansion over `nvars` variables, variable `i` becoming `i + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Jet {
        assert!(offset + self.tab.n <= nvars, "embedding does not fit");
        let tab = table(nvars, self.tab.order);
        let mut c = vec![0.0; tab.len()];
        for (k, mono) in self.tab.monos.iter().enumerate() {
            let mut m = vec![0u8; nvars];
            m[offset..offset + mono.len()].copy_from_slice(mono);
            c[tab.index[&m]] = self.c[k];
        }
        Jet { tab, c }
    }

    /// Partial derivative as a jet of one lower order.
    pub fn diff(&self, i: usize) -> Jet {
        assert!(self.tab.order >= 1, "cannot differentiate an order-0 jet");
        let tab = table(self.tab.n, self.tab.order - 1);
        let mut c = vec![0.0; tab.len()];
        for (k, mono) in self.tab.monos.iter().enumerate() {
            if mono[i] == 0 {
                continue;
            }
            let mut lower = mono.clone();
            lower[i] -= 1;
            if let Some(dst) = tab.index_of(&lower) {
                c[dst] += self.c[k] * mono[i] as f64;
            }
        }
        Jet { tab, c }
    }

    fn common(a: &Jet, b: &Jet) -> (Jet, Jet) {
        use std::cmp::Ordering;
        match a.tab.order.cmp(&b.tab.order) {
            Ordering::Equal => (a.clone(), b.clone()),
            Ordering::Less => (a.clone(), b.truncate(a.tab.order)),
            Ordering::Greater => (a.truncate(b.tab.order), b.clone()),
        }
    }

    fn mul_raw(a: &Jet, b: &Jet) -> Jet {
        if a.tab.order != b.tab.order {
            let (x, y) = Jet::common(a, b);
            return Jet::mul_raw(&x, &y);
        }
        let mut c = vec![0.0; a.tab.len()];
        for &(i, j, k) in &a.tab.products {
            c[k as usize] += a.c[i as usize] * b.c[j as usize];
        }
        Jet { tab: a.tab.clone(), c }
    }

    /// `f(self)` given `derivs[k] = f^{(k)}(value)` for `k = 0..=order`.
    pub fn compose(&self, derivs: &[f64]) -> Jet {
        let p = self.tab.order;
        assert!(derivs.len() > p, "not enough derivatives for composition");
        let mut h = self.clone();
        h.c[0] = 0.0;
        let mut out = self.lift(derivs[0]);
        let mut pow = self.lift(1.0);
        let mut fact = 1.0;
        for (k, d) in derivs.iter().enumerate().take(p + 1).skip(1) {
            pow = Jet::mul_raw(&pow, &h);
            fact *= k as f64;
            for (o, v) in out.c.iter_mut().zip(&pow.c) {
                *o += d / fact * v;
            }
        }
        out
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        self.compose(&vec![e; self.order() + 1])
    }

    pub fn ln(&self) -> Jet {
        let x = self.value();
        let mut d = vec![x.ln()];
        for k in 1..=self.order() {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            d.push(sign * factorial(k - 1) / x.powi(k as i32));
        }
        self.compose(&d)
    }

    pub fn powf(&self, a: f64) -> Jet {
        let x = self.value();
        let mut d = Vec::with_capacity(self.order() + 1);
        let mut coef = 1.0;
        for k in 0..=self.order() {
            d.push(coef * x.powf(a - k as f64));
            coef *= a - k as f64;
        }
        self.compose(&d)
    }

    pub fn powi(&self, k: i32) -> Jet {
        if k >= 0 {
            let mut out = self.lift(1.0);
            for _ in 0..k {
                out = Jet::mul_raw(&out, self);
            }
            out
        } else {
            self.powi(-k).recip()
        }
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn recip(&self) -> Jet {
        self.powf(-1.0)
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cyc = [s, c, -s, -c];
        let d: Vec<f64> = (0..=self.order()).map(|k| cyc[k % 4]).collect();
        self.compose(&d)
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cyc = [c, -s, -c, s];
        let d: Vec<f64> = (0..=self.order()).map(|k| cyc[k % 4]).collect();
        self.compose(&d)
    }

    pub fn sinh(&self) -> Jet {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        let d: Vec<f64> = (0..=self.order()).map(|k| if k % 2 == 0 { s } else { c }).collect();
        self.compose(&d)
    }

    pub fn cosh(&self) -> Jet {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        let d: Vec<f64> = (0..=self.order()).map(|k| if k % 2 == 0 { c } else { s }).collect();
        self.compose(&d)
    }

    pub fn square(&self) -> Jet {
        Jet::mul_raw(self, self)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        self.c.iter_mut().for_each(|v| *v = -*v);
        self
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -self.clone()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                let f: fn(&Jet, &Jet) -> Jet = $body;
                f(self, rhs)
            }
        }
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                (&self).$m(rhs)
            }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                self.$m(&rhs)
            }
        }
        impl $tr<f64> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: f64) -> Jet {
                self.$m(&self.lift(rhs))
            }
        }
        impl $tr<f64> for Jet {
            type Output = Jet;
            fn $m(self, rhs: f64) -> Jet {
                (&self).$m(rhs)
            }
        }
        impl $tr<&Jet> for f64 {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                rhs.lift(self).$m(rhs)
            }
        }
        impl $tr<Jet> for f64 {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                self.$m(&rhs)
            }
        }
    };
}

fn add_jets(a: &Jet, b: &Jet) -> Jet {
    let (mut x, y) = Jet::common(a, b);
    x.c.iter_mut().zip(&y.c).for_each(|(p, q)| *p += q);
    x
}

fn sub_jets(a: &Jet, b: &Jet) -> Jet {
    let (mut x, y) = Jet::common(a, b);
    x.c.iter_mut().zip(&y.c).for_each(|(p, q)| *p -= q);
    x
}

binop!(Add, add, add_jets);
binop!(Sub, sub, sub_jets);
binop!(Mul, mul, |a, b| Jet::mul_raw(a, b));
binop!(Div, div, |a, b| Jet::mul_raw(a, &b.recip()));

impl AddAssign<&Jet> for Jet {
    fn add_assign(&mut self, rhs: &Jet) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Jet> for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Jet> for Jet {
    fn sub_assign(&mut self, rhs: &Jet) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Jet> for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<f64> for Jet {
    fn mul_assign(&mut self, rhs: f64) {
        self.c.iter_mut().for_each(|v| *v *= rhs);
    }
}

/// Square matrix of jets, row major.
pub type JetMatrix = Vec<Vec<Jet>>;

/// Zero matrix with the table of `like`.
pub fn zeros(like: &Jet, n: usize) -> JetMatrix {
    vec![vec![like.lift(0.0); n]; n]
}

/// Inverse of a jet matrix by Gauss–Jordan elimination with partial pivoting
/// on the base values.
pub fn invert(m: &JetMatrix) -> Option<JetMatrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = zeros(&m[0][0], n);
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = row[i].lift(1.0);
    }
    let scale = m
        .iter()
        .flat_map(|r| r.iter().map(|v| v.value().abs()))
        .fold(0.0, f64::max)
        .max(1e-300);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&p, &q| a[p][col].value().abs().total_cmp(&a[q][col].value().abs()))
            .expect("nonempty range");
        if a[piv][col].value().abs() < 1e-14 * scale {
            return None;
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let r = a[col][col].recip();
        for k in 0..n {
            a[col][k] = &a[col][k] * &r;
            inv[col][k] = &inv[col][k] * &r;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = a[row][col].clone();
            if f.max_abs() == 0.0 {
                continue;
            }
            for k in 0..n {
                let t = &f * &a[col][k];
                a[row][k] -= t;
                let t = &f * &inv[col][k];
                inv[row][k] -= t;
            }
        }
    }
    Some(inv)
}

/// Base values of a jet matrix.
pub fn values(m: &JetMatrix) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(Jet::value).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(table(3, 2).len(), 10);
        assert_eq!(table(7, 3).len(), 120);
        assert_eq!(table(0, 2).len(), 1);
    }

    #[test]
    fn truncation_is_prefix() {
        let big = table(4, 3);
        let small = table(4, 2);
        assert_eq!(&big.monomials()[..small.len()], small.monomials());
    }

    #[test]
    fn product_rule_and_chain_rule() {
        let x = Jet::seed(&[0.3, -0.7], 3);
        let f = (&x[0] * &x[1]).sin() + x[0].exp() / (&x[1] * &x[1] + 2.0);
        let (a, b) = (0.3f64, -0.7f64);
        let fx = b * (a * b).cos() + a.exp() / (b * b + 2.0);
        let fy = a * (a * b).cos() - a.exp() * 2.0 * b / (b * b + 2.0).powi(2);
        assert!((f.d1(0) - fx).abs() < 1e-13);
        assert!((f.d1(1) - fy).abs() < 1e-13);
        let fxx = -b * b * (a * b).sin() + a.exp() / (b * b + 2.0);
        assert!((f.d2(0, 0) - fxx).abs() < 1e-12);
    }

    #[test]
    fn third_derivatives_of_log_and_sqrt() {
        let x = Jet::seed(&[1.7], 3);
        let l = x[0].ln();
        assert!((l.partial(&[3]) - 2.0 / 1.7f64.powi(3)).abs() < 1e-13);
        let s = x[0].sqrt();
        assert!((s.partial(&[3]) - 0.375 * 1.7f64.powf(-2.5)).abs() < 1e-13);
    }

    #[test]
    fn diff_lowers_order() {
        let x = Jet::seed(&[0.5, 2.0], 3);
        let f = x[0].powi(3) * &x[1];
        let fx = f.diff(0);
        assert_eq!(fx.order(), 2);
        assert!((fx.value() - 3.0 * 0.25 * 2.0).abs() < 1e-14);
        assert!((fx.d1(0) - 6.0 * 0.5 * 2.0).abs() < 1e-14);
    }

    #[test]
    fn matrix_inverse() {
        let x = Jet::seed(&[0.4], 2);
        let m = vec![
            vec![x[0].lift(-1.0) - &x[0] * &x[0], x[0].clone()],
            vec![x[0].clone(), x[0].lift(1.0)],
        ];
        let inv = invert(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = x[0].lift(0.0);
                for k in 0..2 {
                    s += &m[i][k] * &inv[k][j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((s.value() - target).abs() < 1e-14);
                assert!(s.coefficients()[1..].iter().all(|c| c.abs() < 1e-13));
            }
        }
    }
}
