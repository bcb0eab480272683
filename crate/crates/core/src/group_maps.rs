//! Maps into and out of `SO(n)`, `U(k)` and `SU(k)`: first-column
//! projections, their sections, the retractions built from them, and the
//! J-map `S^{n+k} -> S^k` attached to a map `S^n -> SO(k)`.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{int, ComplexPoly, Polynomial, VarRegistry};
use crate::ratmap::{
    sample_points, EntryKind, MatrixMap, RationalMap, SampleConfig, Variety, VarietyRegistry,
};

fn need(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.into()))
    }
}

/// Section numerators `α_{i,j} (1 + c_1)` for a real unit vector `c`.
fn real_section(c: &[Polynomial], one: &Polynomial) -> (Vec<Vec<Polynomial>>, Polynomial) {
    let n = c.len();
    let den = one + &c[0];
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i, j) {
                    (_, 0) => &c[i] * &den,
                    (0, _) => -(&c[j] * &den),
                    _ if i == j => &den - &c[i] * &c[i],
                    _ => -(&c[i] * &c[j]),
                })
                .collect()
        })
        .collect();
    (entries, den)
}

/// Complex section numerators over `|1 + c_1|^2` for a complex unit vector `c`.
fn complex_section(c: &[ComplexPoly], reg: &Arc<VarRegistry>) -> (Vec<Vec<ComplexPoly>>, Polynomial) {
    let k = c.len();
    let a = &ComplexPoly::one(reg) + &c[0];
    let den = a.norm_sqr();
    let entries = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match (i, j) {
                    (_, 0) => c[i].scale_real(&den),
                    (0, _) => -&(&(&a * &a) * &c[j].conj()),
                    _ if i == j => &ComplexPoly::real(den.clone()) - &(&a * &ComplexPoly::real(c[i].norm_sqr())),
                    _ => -&(&(&c[i] * &c[j].conj()) * &a),
                })
                .collect()
        })
        .collect();
    (entries, den)
}

fn real_matrix_vars(reg: &Arc<VarRegistry>, n: usize) -> Vec<Vec<Polynomial>> {
    (0..n).map(|i| (0..n).map(|j| Polynomial::var(reg, i * n + j)).collect()).collect()
}

/// `p : SO(n) -> S^{n-1}`, the first column.
pub fn first_column(n: usize) -> Result<RationalMap> {
    need(n >= 2, "first_column needs n >= 2")?;
    let so = Variety::special_orthogonal(n);
    let g = real_matrix_vars(so.registry(), n);
    let col = g.iter().map(|row| row[0].clone()).collect();
    RationalMap::polynomial(so, Variety::sphere(n - 1), col)
}

/// `p : U(k) -> S^{2k-1}`, the first column in interleaved real coordinates.
pub fn first_column_u(k: usize) -> Result<RationalMap> {
    need(k >= 1, "first_column_u needs k >= 1")?;
    let u = Variety::unitary(k);
    let g = Variety::complex_entries(u.registry(), k);
    let col = g.iter().flat_map(|row| [row[0].re.clone(), row[0].im.clone()]).collect();
    RationalMap::polynomial(u, Variety::sphere(2 * k - 1), col)
}

/// Section `s : S^{n-1} \ {-e} -> SO(n)` of the first-column map.
pub fn section_so(n: usize) -> Result<MatrixMap> {
    need(n >= 2, "section_so needs n >= 2")?;
    let s = Variety::sphere(n - 1);
    let reg = s.registry();
    let c: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(reg, i)).collect();
    let (entries, den) = real_section(&c, &Polynomial::one(reg));
    MatrixMap::from_entries(s, Variety::special_orthogonal(n), entries, den, "{-e}")
}

/// Section `s' : S^{2k-1} \ {-e} -> U(k)`, realified with denominator
/// `(1 + u1)^2 + v1^2`.
pub fn section_u(k: usize) -> Result<MatrixMap> {
    need(k >= 1, "section_u needs k >= 1")?;
    let s = Variety::sphere(2 * k - 1);
    let reg = s.registry();
    let c: Vec<ComplexPoly> = (0..k).map(|i| ComplexPoly::var_pair(reg, 2 * i, 2 * i + 1)).collect();
    let (entries, den) = complex_section(&c, reg);
    MatrixMap::from_complex_entries(s, Variety::unitary(k), entries, den, "{-e}")
}

/// Retraction of `{g in SO(m) : column o of g avoids -e}` that acts on the
/// lower-right `(m-o) x (m-o)` block: `g ↦ diag(I_o, s(c)^T) g` with `c`
/// the lower part of column `o`.
fn lifted_retract_so(m: usize, o: usize) -> Result<MatrixMap> {
    let so = Variety::special_orthogonal(m);
    let reg = so.registry();
    let g = real_matrix_vars(reg, m);
    let one = Polynomial::one(reg);
    let c: Vec<Polynomial> = (o..m).map(|i| g[i][o].clone()).collect();
    let (s, den) = real_section(&c, &one);
    let entries = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i < o {
                        &g[i][j] * &den
                    } else {
                        (o..m).fold(Polynomial::zero(reg), |acc, l| acc + &s[l - o][i - o] * &g[l][j])
                    }
                })
                .collect()
        })
        .collect();
    let excluded = format!("column {} of g has lower part -e", o + 1);
    MatrixMap::from_entries(so.clone(), so, entries, den, excluded)
}

/// Retraction `r(g) = s(p(g))^T g` of a neighbourhood of `SO(n-1)` in `SO(n)`.
/// The image has first column `e`; its lower-right block lies in `SO(n-1)`.
pub fn retract_so(n: usize) -> Result<MatrixMap> {
    need(n >= 3, "retract_so needs n >= 3")?;
    lifted_retract_so(n, 0)
}

/// Retraction `r'(g) = s'(p(g))^* g` of a neighbourhood of `U(k-1)` in `U(k)`.
pub fn retract_u(k: usize) -> Result<MatrixMap> {
    need(k >= 2, "retract_u needs k >= 2")?;
    let u = Variety::unitary(k);
    let reg = u.registry();
    let g = Variety::complex_entries(reg, k);
    let c: Vec<ComplexPoly> = g.iter().map(|row| row[0].clone()).collect();
    let (s, den) = complex_section(&c, reg);
    let entries = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).fold(ComplexPoly::zero(reg), |acc, l| &acc + &(&s[l][i].conj() * &g[l][j])))
                .collect()
        })
        .collect();
    MatrixMap::from_complex_entries(u.clone(), u, entries, den, "first column of g equals -e")
}

/// `r_{k+1} ∘ ... ∘ r_m` on `SO(m)`, each retraction acting on its lower-right
/// block. The image has the first `m-k` columns equal to standard basis
/// vectors and its lower-right `k x k` block in `SO(k)`.
///
/// Defined where every intermediate column avoids `-e`; evaluation outside
/// that set fails with a zero denominator.
pub fn chain_retract(m: usize, k: usize) -> Result<MatrixMap> {
    need(k >= 2 && m > k, "chain_retract needs m > k >= 2")?;
    let mut acc = lifted_retract_so(m, 0)?.into_base();
    for o in 1..m - k {
        acc = lifted_retract_so(m, o)?.base().compose(&acc)?;
    }
    let acc = acc.with_excluded(format!(
        "some column j <= {} of an intermediate retraction has lower part -e",
        m - k
    ));
    MatrixMap::new(acc, m, m, EntryKind::Real)
}

/// `g ↦ g · diag(conj(det g), 1, ..., 1)`, a retraction `U(k) -> SU(k)`.
pub fn su_retract(k: usize) -> Result<MatrixMap> {
    need(k >= 1, "su_retract needs k >= 1")?;
    let u = Variety::unitary(k);
    let reg = u.registry();
    let g = Variety::complex_entries(reg, k);
    let dc = crate::poly::complex_poly_det(&g).conj();
    let entries = g
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, z)| if j == 0 { z * &dc } else { z.clone() })
                .collect()
        })
        .collect();
    MatrixMap::from_complex_entries(u.clone(), Variety::special_unitary(k), entries, Polynomial::one(reg), "none")
}

/// Realification `U(k) -> SO(2k)`, each entry `a + bi` becoming `[[a, -b], [b, a]]`.
pub fn embed_u_in_so(k: usize) -> Result<MatrixMap> {
    need(k >= 1, "embed_u_in_so needs k >= 1")?;
    let u = Variety::unitary(k);
    let reg = u.registry();
    let g = Variety::complex_entries(reg, k);
    let n = 2 * k;
    let entries = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let z = &g[r / 2][c / 2];
                    match (r % 2, c % 2) {
                        (0, 0) | (1, 1) => z.re.clone(),
                        (0, 1) => -&z.im,
                        _ => z.im.clone(),
                    }
                })
                .collect()
        })
        .collect();
    MatrixMap::from_entries(u.clone(), Variety::special_orthogonal(n), entries, Polynomial::one(reg), "none")
}

/// Input of the J-map: `f = P/Q` into `SO(k)` on a neighbourhood of `S^n`.
#[derive(Debug, Clone)]
pub struct JMapInput {
    f: MatrixMap,
    n: usize,
    k: usize,
}

/// Number of sphere samples used to check that `Q` is positive.
const Q_SAMPLES: usize = 200;

impl JMapInput {
    /// Validates shapes, `f(e) = I` exactly, and `Q > 0` at sampled points of `S^n`.
    pub fn new(f: MatrixMap, n: usize, k: usize) -> Result<Self> {
        let bad = |m: String| Error::InvalidJMapInput(m);
        if n < 1 || k < 1 {
            return Err(bad("n and k must be positive".into()));
        }
        if f.kind() != EntryKind::Real || f.rows() != k || f.cols() != k {
            return Err(bad(format!("f must be a real {k}x{k} matrix map")));
        }
        if f.base().domain().ambient_dim() != n + 1 {
            return Err(bad(format!(
                "f has {} ambient variables, expected {}",
                f.base().domain().ambient_dim(),
                n + 1
            )));
        }
        let q = f.base().denominator();
        for p in sample_points(&Variety::sphere(n), Q_SAMPLES, 0, &SampleConfig::default())? {
            let v = q.evaluate(p.coords())?;
            if !v.is_positive() {
                return Err(bad(format!(
                    "Q = {} at a point of S^{n}; it must be positive on the sphere",
                    crate::poly::format_rational(&v)
                )));
            }
        }
        let mut e = vec![int(0); n + 1];
        e[0] = int(1);
        if !f.evaluate_real(&e)?.is_identity() {
            return Err(bad("f(e) must be the identity matrix".into()));
        }
        Ok(JMapInput { f, n, k })
    }

    pub fn f(&self) -> &MatrixMap {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `{"f": <matrix map>, "n": n, "k": k}`.
    pub fn to_json(&self) -> Value {
        json!({ "f": self.f.to_json(), "n": self.n, "k": self.k })
    }

    pub fn from_json(value: &Value, varieties: &VarietyRegistry) -> Result<Self> {
        let field = |name: &str| -> Result<usize> {
            value
                .get(name)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| Error::Parse(format!("J-map input needs integer field `{name}`")))
        };
        let f = value
            .get("f")
            .ok_or_else(|| Error::Parse("J-map input needs field `f`".into()))?;
        Self::new(MatrixMap::from_json(f, varieties)?, field("n")?, field("k")?)
    }
}

/// `g(x, y) = (Q^2 - |y|^2, 2 P^T y) / (Q^2 + |y|^2)` from `S^{n+k}` to `S^k`,
/// with `x` the first `n+1` and `y` the last `k` coordinates.
pub fn j_map(input: &JMapInput) -> Result<RationalMap> {
    let (n, k) = (input.n, input.k);
    let dom = Variety::sphere(n + k);
    let reg = dom.registry();
    let xs: Vec<Polynomial> = (0..=n).map(|i| Polynomial::var(reg, i)).collect();
    let ys: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(reg, n + 1 + i)).collect();
    let lift = |p: &Polynomial| p.substitute(&xs, reg);
    let f = input.f.base();
    let q = lift(f.denominator())?;
    let q2 = &q * &q;
    let y2 = ys.iter().fold(Polynomial::zero(reg), |acc, y| acc + y * y);
    let mut nums = vec![&q2 - &y2];
    for i in 0..k {
        let mut t = Polynomial::zero(reg);
        for (j, y) in ys.iter().enumerate() {
            t = t + lift(input.f.entry_numerator(j, i))? * y;
        }
        nums.push(t.scale(&int(2)));
    }
    Ok(RationalMap::new(dom, Variety::sphere(k), nums, q2 + y2, "none")?
        .with_positivity_note("Q > 0 on S^n, so Q^2 + |y|^2 vanishes nowhere on the sphere"))
}

/// J-map input `f ≡ I`, `Q = 1`.
pub fn jmap_trivial_input(n: usize, k: usize) -> Result<JMapInput> {
    let s = Variety::sphere(n.max(1));
    let reg = s.registry();
    let entries = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Polynomial::one(reg) } else { Polynomial::zero(reg) }).collect())
        .collect();
    let f = MatrixMap::from_entries(s.clone(), Variety::special_orthogonal(k), entries, Polynomial::one(reg), "none")?;
    JMapInput::new(f, n, k)
}

/// Normalised double-angle family `S^1 -> SO(2)`:
/// `P = [[x1^2 - x2^2, -2x1x2], [2x1x2, x1^2 - x2^2]]`, `Q = x1^2 + x2^2`,
/// so that `P^T P = Q^2 I` identically.
pub fn hopf_input() -> Result<JMapInput> {
    let s = Variety::sphere(1);
    let reg = s.registry();
    let (x1, x2) = (Polynomial::var(reg, 0), Polynomial::var(reg, 1));
    let a = &x1 * &x1 - &x2 * &x2;
    let b = (&x1 * &x2).scale(&int(2));
    let f = MatrixMap::from_entries(
        s,
        Variety::special_orthogonal(2),
        vec![vec![a.clone(), -&b], vec![b, a]],
        &x1 * &x1 + &x2 * &x2,
        "{0}",
    )?;
    JMapInput::new(f, 1, 2)
}

/// Rotation family `[[x1, -x2], [x2, x1]]` with `Q = 1`; orthogonal only on `S^1` itself.
pub fn rotation_literal_input() -> Result<JMapInput> {
    let s = Variety::sphere(1);
    let reg = s.registry();
    let (x1, x2) = (Polynomial::var(reg, 0), Polynomial::var(reg, 1));
    let f = MatrixMap::from_entries(
        s.clone(),
        Variety::special_orthogonal(2),
        vec![vec![x1.clone(), -&x2], vec![x2, x1]],
        Polynomial::one(reg),
        "none",
    )?;
    JMapInput::new(f, 1, 2)
}

/// The Hopf-type map `S^3 -> S^2`.
pub fn jmap_hopf() -> Result<RationalMap> {
    j_map(&hopf_input()?)
}

/// Checks that the `y`-columns of the Jacobian of `g` at `(x, 0)` equal
/// `(0; (2/Q(x)) f(x)^T)` exactly.
pub fn jmap_differential_matches(input: &JMapInput, g: &RationalMap, x: &[crate::poly::Rational]) -> Result<bool> {
    let (n, k) = (input.n, input.k);
    let mut pt = x.to_vec();
    pt.extend(std::iter::repeat_n(int(0), k));
    let jac = g.jacobian_exact(&pt)?;
    let q = input.f.base().denominator().evaluate(x)?;
    let fx = input.f.evaluate_real(x)?;
    let scale = int(2) / q;
    for j in 0..k {
        let col = n + 1 + j;
        if !jac[(0, col)].is_zero() {
            return Ok(false);
        }
        for i in 0..k {
            if jac[(1 + i, col)] != &scale * &fx[(j, i)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cayley, cayley_complex, CMatrix, QMatrix};
    use crate::poly::{rat, GaussianRational, Rational};
    use crate::ratmap::{maps_into, stream_rng, PointOnVariety};

    fn so2_quarter() -> QMatrix {
        let a = QMatrix::from_vec(2, 2, vec![int(0), int(1), int(-1), int(0)]).unwrap();
        cayley(&a).unwrap()
    }

    #[test]
    fn first_column_examples() {
        let p = first_column(2).unwrap();
        let g = so2_quarter();
        assert_eq!(p.evaluate_coords(g.data()).unwrap(), vec![int(0), int(1)]);
        assert_eq!(p.evaluate_coords(QMatrix::identity(3).data()).unwrap()[..1], [int(1)]);
        assert!(first_column(1).is_err());
    }

    #[test]
    fn section_examples() {
        let s = section_so(2).unwrap();
        let m = s.evaluate_real(&[int(0), int(1)]).unwrap();
        assert_eq!(m.data(), &[int(0), int(-1), int(1), int(0)]);
        for n in 2..=4 {
            let s = section_so(n).unwrap();
            let mut e = vec![int(0); n];
            e[0] = int(1);
            assert!(s.evaluate_real(&e).unwrap().is_identity());
        }
        assert!(maps_into(section_so(2).unwrap().base(), 5, 0).unwrap().passed);
    }

    #[test]
    fn section_u_is_unitary_at_a_point() {
        let s = section_u(2).unwrap();
        // (3/5, 0, 0, 4/5) on S^3
        let a = [rat(3, 5), int(0), int(0), rat(4, 5)];
        let m = s.evaluate_complex(&a).unwrap();
        assert!(m.conj_transpose().mul(&m).unwrap().is_identity());
        assert_eq!(m[(0, 0)], GaussianRational::real(rat(3, 5)));
        assert_eq!(m[(1, 0)], GaussianRational::new(int(0), rat(4, 5)));
    }

    #[test]
    fn retractions_fix_identity() {
        let r = retract_so(3).unwrap();
        assert!(r.evaluate_real(QMatrix::identity(3).data()).unwrap().is_identity());
        let ru = retract_u(2).unwrap();
        assert!(ru.evaluate_complex(&CMatrix::identity(2).to_realified()).unwrap().is_identity());
        assert!(retract_so(2).is_err() && retract_u(1).is_err());
    }

    #[test]
    fn retract_so_first_column_is_e() {
        let r = retract_so(3).unwrap();
        let cfg = SampleConfig::default();
        let mut rng = stream_rng(5, 0);
        let a = crate::ratmap::random_skew_symmetric(3, &mut rng, &cfg);
        let g = cayley(&a).unwrap();
        let out = r.evaluate_real(g.data()).unwrap();
        assert_eq!(out.column(0), vec![int(1), int(0), int(0)]);
        assert_eq!(out.transpose().mul(&out).unwrap(), QMatrix::identity(3));
    }

    #[test]
    fn su_retract_and_embedding() {
        let su = su_retract(2).unwrap();
        let cfg = SampleConfig::default();
        let mut rng = stream_rng(1, 0);
        let g = cayley_complex(&crate::ratmap::random_skew_hermitian(2, &mut rng, &cfg)).unwrap();
        let out = su.evaluate_complex(&g.to_realified()).unwrap();
        assert_eq!(out.det(), GaussianRational::one());
        let emb = embed_u_in_so(1).unwrap();
        let m = emb.evaluate_real(&[int(0), int(1)]).unwrap();
        assert_eq!(m.data(), &[int(0), int(-1), int(1), int(0)]);
    }

    #[test]
    fn chain_fixes_embedded_block() {
        let c = chain_retract(4, 2).unwrap();
        let h = so2_quarter();
        let mut g = QMatrix::identity(4);
        for i in 0..2 {
            for j in 0..2 {
                g[(2 + i, 2 + j)] = h[(i, j)].clone();
            }
        }
        assert_eq!(c.evaluate_real(g.data()).unwrap(), g);
        assert!(chain_retract(2, 2).is_err());
    }

    #[test]
    fn jmap_examples() {
        let t = jmap_trivial_input(1, 2).unwrap();
        let g = j_map(&t).unwrap();
        assert!(maps_into(&g, 5, 0).unwrap().passed);
        let e = PointOnVariety::base_point(g.domain()).unwrap();
        assert_eq!(g.evaluate(&e).unwrap().coords(), &[int(1), int(0), int(0)]);

        let h = jmap_hopf().unwrap();
        assert!(maps_into(&h, 5, 0).unwrap().passed);
        let input = hopf_input().unwrap();
        let x: Vec<Rational> = vec![rat(3, 5), rat(4, 5)];
        assert!(jmap_differential_matches(&input, &h, &x).unwrap());

        let lit = rotation_literal_input().unwrap();
        let gl = j_map(&lit).unwrap();
        assert!(!maps_into(&gl, 5, 0).unwrap().passed);
        assert!(jmap_differential_matches(&lit, &gl, &x).unwrap());
    }

    #[test]
    fn jmap_input_validation() {
        let s = Variety::sphere(1);
        let reg = s.registry();
        let x1 = Polynomial::var(reg, 0);
        let bad_q = MatrixMap::from_entries(
            s.clone(),
            Variety::special_orthogonal(1),
            vec![vec![x1.clone()]],
            x1,
            "none",
        )
        .unwrap();
        assert!(matches!(JMapInput::new(bad_q, 1, 1), Err(Error::InvalidJMapInput(_))));
        let v = hopf_input().unwrap().to_json();
        let back = JMapInput::from_json(&v, &VarietyRegistry::new()).unwrap();
        assert_eq!(back.n(), 1);
    }
}
