//! Adapted frames near a point and the tables of their covariant derivatives.
//!
//! Every field is expanded as a first-order jet at the point. Frame vectors
//! built from these by algebra and square roots are again first-order jets,
//! so one more derivative (a covariant derivative, a bracket, `e(λ)`) gives
//! exact values at the point. Coefficients are rationals when every square
//! root involved is rational, otherwise binary floats.

use std::any::Any;
use std::sync::Arc;

use serde::Serialize;

use super::HTag;
use crate::check::{Check, Witness};
use crate::curvature::Curvature;
use crate::error::{Error, Result};
use crate::structure::{Field, Structure, StructureAnalysis};
use crate::symbolic::{render_rational, Jet, JetCoeff, JetSpace, Rational, Scalar};

pub const TOL: f64 = 1e-9;

type J<C> = Jet<C>;
type V<C> = Vec<Jet<C>>;

fn is_exact<C: JetCoeff>() -> bool {
    std::any::TypeId::of::<C>() == std::any::TypeId::of::<Rational>()
}

pub(crate) fn render_c<C: JetCoeff>(c: &C) -> String {
    match (c as &dyn Any).downcast_ref::<Rational>() {
        Some(q) => render_rational(q),
        None => {
            let v = c.to_f64();
            // avoid printing -0.000000000000
            let v = if v.abs() < 5e-13 { 0.0 } else { v };
            format!("{v:.12}")
        }
    }
}

/// Fields of the structure as jets at one point.
pub(crate) struct Env<C: JetCoeff> {
    space: Arc<JetSpace>,
    g: Vec<J<C>>,
    gamma: Vec<J<C>>,
    phi: Vec<J<C>>,
    h: Vec<J<C>>,
    ricci: Vec<J<C>>,
    sigma: V<C>,
    xi: V<C>,
    eta: V<C>,
    alpha: J<C>,
}

fn jets<C: JetCoeff>(space: &Arc<JetSpace>, t: &Field) -> Result<Vec<J<C>>> {
    t.comps().iter().map(|c| Jet::from_field(space, c)).collect()
}

impl<C: JetCoeff> Env<C> {
    pub(crate) fn new(s: &Structure, an: &StructureAnalysis, c: &Curvature, point: &[Rational]) -> Result<Self> {
        let space = JetSpace::new(point.to_vec(), 1);
        Ok(Env {
            g: jets(&space, &s.g)?,
            gamma: jets(&space, &s.conn.gamma)?,
            phi: jets(&space, &s.phi)?,
            h: jets(&space, &an.h)?,
            ricci: jets(&space, &c.ricci)?,
            sigma: jets(&space, &c.sigma)?,
            xi: jets(&space, &s.xi)?,
            eta: jets(&space, &s.eta)?,
            alpha: Jet::from_field(&space, &an.alpha)?,
            space,
        })
    }

    fn zero(&self) -> J<C> {
        Jet::constant(&self.space, C::zero())
    }

    fn num(&self, q: i64) -> J<C> {
        Jet::constant(&self.space, C::from_rational(&crate::symbolic::int(q)))
    }

    fn op(&self, m: &[J<C>], v: &[J<C>]) -> V<C> {
        (0..3)
            .map(|a| (0..3).fold(self.zero(), |acc, b| acc.add(&m[a * 3 + b].mul(&v[b]))))
            .collect()
    }

    fn phi(&self, v: &[J<C>]) -> V<C> {
        self.op(&self.phi, v)
    }

    fn h(&self, v: &[J<C>]) -> V<C> {
        self.op(&self.h, v)
    }

    fn bil(&self, m: &[J<C>], x: &[J<C>], y: &[J<C>]) -> J<C> {
        let mut acc = self.zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc.add(&m[i * 3 + j].mul(&x[i]).mul(&y[j]));
            }
        }
        acc
    }

    fn g(&self, x: &[J<C>], y: &[J<C>]) -> J<C> {
        self.bil(&self.g, x, y)
    }

    fn ric(&self, x: &[J<C>], y: &[J<C>]) -> J<C> {
        self.bil(&self.ricci, x, y)
    }

    fn form(&self, w: &[J<C>], v: &[J<C>]) -> J<C> {
        (0..3).fold(self.zero(), |acc, i| acc.add(&w[i].mul(&v[i])))
    }

    /// `X(f)`.
    fn dir(&self, x: &[J<C>], f: &J<C>) -> J<C> {
        (0..3).fold(self.zero(), |acc, i| acc.add(&x[i].mul(&f.partial(i))))
    }

    /// `∇_X Y = X^i (∂_i Y^k + Γ^k_{ij} Y^j) ∂_k`.
    fn nabla(&self, x: &[J<C>], y: &[J<C>]) -> V<C> {
        (0..3)
            .map(|k| {
                let mut acc = self.zero();
                for i in 0..3 {
                    let mut t = y[k].partial(i);
                    for j in 0..3 {
                        t = t.add(&self.gamma[(k * 3 + i) * 3 + j].mul(&y[j]));
                    }
                    acc = acc.add(&x[i].mul(&t));
                }
                acc
            })
            .collect()
    }

    fn bracket(&self, x: &[J<C>], y: &[J<C>]) -> V<C> {
        sub(&self.nabla(x, y), &self.nabla(y, x))
    }

    /// `(∇_ξ h)v`.
    fn nabla_xi_h(&self, v: &[J<C>]) -> V<C> {
        sub(&self.nabla(&self.xi, &self.h(v)), &self.h(&self.nabla(&self.xi, v)))
    }

    fn project(&self, w: &[J<C>]) -> V<C> {
        sub(w, &scale(&self.form(&self.eta, w), &self.xi))
    }

    /// Seeds for the frame: projections of the coordinate vectors onto
    /// `ker η`, then of their pairwise sums.
    fn seeds(&self) -> Vec<V<C>> {
        let basis = |i: usize| -> V<C> { (0..3).map(|k| self.num(i64::from(k == i))).collect() };
        let mut out: Vec<V<C>> = (0..3).map(|i| self.project(&basis(i))).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                out.push(self.project(&add(&basis(i), &basis(j))));
            }
        }
        out
    }

    /// A unit timelike vector field in `ker η`.
    fn unit_timelike(&self) -> Result<V<C>> {
        for w in self.seeds() {
            let n = self.g(&w, &w);
            if n.value().is_zero() {
                continue;
            }
            return if n.value().to_f64() < 0.0 {
                Ok(scale(&inv_sqrt(&n.neg())?, &w))
            } else {
                Ok(scale(&inv_sqrt(&n)?, &self.phi(&w)))
            };
        }
        Err(Error::Degenerate("ker η has no non-null seed at the point".into()))
    }
}

fn add<C: JetCoeff>(a: &[J<C>], b: &[J<C>]) -> V<C> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn sub<C: JetCoeff>(a: &[J<C>], b: &[J<C>]) -> V<C> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn scale<C: JetCoeff>(f: &J<C>, v: &[J<C>]) -> V<C> {
    v.iter().map(|x| f.mul(x)).collect()
}

fn not_exact() -> Error {
    Error::Precondition("square root leaves the rationals".into())
}

fn sqrt<C: JetCoeff>(f: &J<C>) -> Result<J<C>> {
    f.sqrt().ok_or_else(not_exact)
}

fn inv_sqrt<C: JetCoeff>(f: &J<C>) -> Result<J<C>> {
    sqrt(f)?.try_inv().ok_or(Error::DivisionByZero)
}

fn recip<C: JetCoeff>(f: &J<C>) -> Result<J<C>> {
    f.try_inv().ok_or(Error::DivisionByZero)
}

fn abs<C: JetCoeff>(f: &J<C>) -> J<C> {
    if f.value().to_f64() < 0.0 {
        f.neg()
    } else {
        f.clone()
    }
}

/// Second elementary symmetric function of the operator `h`; equals the
/// determinant of `h` on `ker η` since `hξ = 0`.
fn e2<C: JetCoeff>(h: &[J<C>]) -> J<C> {
    let m = |i: usize, j: usize| &h[i * 3 + j];
    let minor = |a: usize, b: usize| m(a, a).mul(m(b, b)).sub(&m(a, b).mul(m(b, a)));
    minor(0, 1).add(&minor(0, 2)).add(&minor(1, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    /// `−g(e,e) = g(φe,φe) = g(ξ,ξ) = 1`.
    OrthonormalPhi,
    /// `g(e1,e2) = g(e3,e3) = 1`, `e1`, `e2` null.
    PseudoOrthonormal,
}

/// Frame jets plus the signed data that fixes it.
pub struct FrameJets<C: JetCoeff> {
    kind: FrameKind,
    vectors: [V<C>; 3],
    /// `λ` of the canonical form (`he = λe` or `he = λφe`).
    lambda: Option<J<C>>,
    /// `φe1 = s e1` in the nilpotent case.
    phi_sign: Option<i8>,
    /// `he1 = ε e2` in the nilpotent case.
    h_sign: Option<i8>,
}

pub(crate) fn build_frame<C: JetCoeff>(env: &Env<C>, tag: HTag) -> Result<FrameJets<C>> {
    let xi = env.xi.clone();
    match tag {
        HTag::Zero => {
            let u = env.unit_timelike()?;
            Ok(FrameJets {
                kind: FrameKind::OrthonormalPhi,
                vectors: [u.clone(), env.phi(&u), xi],
                lambda: None,
                phi_sign: None,
                h_sign: None,
            })
        }
        HTag::H1 => {
            let lam = sqrt(&e2(&env.h).neg())?;
            for w in env.seeds() {
                // (h + λ)w lies in the λ-eigenspace since h² = λ² on ker η
                let v = add(&env.h(&w), &scale(&lam, &w));
                let n = env.g(&v, &v);
                if n.value().is_zero() {
                    continue;
                }
                let e = if n.value().to_f64() < 0.0 {
                    scale(&inv_sqrt(&n.neg())?, &v)
                } else {
                    scale(&inv_sqrt(&n)?, &env.phi(&v))
                };
                let lambda = env.g(&env.h(&e), &e).neg();
                return Ok(FrameJets {
                    kind: FrameKind::OrthonormalPhi,
                    vectors: [e.clone(), env.phi(&e), xi],
                    lambda: Some(lambda),
                    phi_sign: None,
                    h_sign: None,
                });
            }
            Err(Error::Degenerate("no eigenvector seed for h at the point".into()))
        }
        HTag::H3 => {
            let u = env.unit_timelike()?;
            let pu = env.phi(&u);
            let hu = env.h(&u);
            let (a, b) = (env.g(&hu, &u), env.g(&hu, &pu));
            let lam = sqrt(&e2(&env.h))?;
            // e = x u + y φu with x² − y² = 1 and g(he, e) = 0
            let p = abs(&b).mul(&recip(&lam)?);
            let r = a.mul(&p).mul(&recip(&b)?).neg();
            let sp = sqrt(&p.add(&r))?;
            let sm = sqrt(&p.sub(&r))?;
            let half = crate::symbolic::rat(1, 2);
            let x = sp.add(&sm).scale(&half);
            let y = sp.sub(&sm).scale(&half);
            let e = add(&scale(&x, &u), &scale(&y, &pu));
            let f = env.phi(&e);
            let lambda = env.g(&env.h(&e), &f);
            Ok(FrameJets {
                kind: FrameKind::OrthonormalPhi,
                vectors: [e, f, xi],
                lambda: Some(lambda),
                phi_sign: None,
                h_sign: None,
            })
        }
        HTag::H2 => {
            let u = env.unit_timelike()?;
            let pu = env.phi(&u);
            for s in [1i8, -1] {
                let v = add(&u, &scale(&env.num(i64::from(s)), &pu));
                let q = env.g(&v, &env.h(&v));
                if q.value().is_zero() {
                    continue;
                }
                let eps: i8 = if q.value().to_f64() < 0.0 { -1 } else { 1 };
                let e1 = scale(&inv_sqrt(&abs(&q))?, &v);
                let e2v = scale(&env.num(i64::from(eps)), &env.h(&e1));
                return Ok(FrameJets {
                    kind: FrameKind::PseudoOrthonormal,
                    vectors: [e1, e2v, xi],
                    lambda: None,
                    phi_sign: Some(s),
                    h_sign: Some(eps),
                });
            }
            Err(Error::Degenerate("h vanishes on both null lines of ker η".into()))
        }
    }
}

/// Extracted frame data and the checked table, over one coefficient ring.
pub struct Tables<C: JetCoeff> {
    pub frame: FrameJets<C>,
    pub coefficients: Vec<(&'static str, C)>,
    pub checks: Vec<Check>,
    /// `ξ(λ)` where `λ` is defined.
    pub xi_lambda: Option<C>,
    pub alpha: C,
}

impl<C: JetCoeff> Tables<C> {
    pub fn coefficient(&self, name: &str) -> Option<&C> {
        self.coefficients.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    pub fn frame_phi_sign(&self) -> i8 {
        self.frame.phi_sign.unwrap_or(1)
    }

    pub fn lambda(&self) -> Option<C> {
        self.frame.lambda.as_ref().map(|l| l.value().clone())
    }
}

struct Checker {
    tol: f64,
    exact: bool,
    out: Vec<Check>,
}

impl Checker {
    fn near<C: JetCoeff>(&self, c: &C) -> bool {
        if self.exact {
            c.is_zero()
        } else {
            c.to_f64().abs() <= self.tol
        }
    }

    fn vector<C: JetCoeff>(&mut self, name: &str, r: &[J<C>]) {
        let bad = r.iter().position(|c| !self.near(c.value()));
        self.out.push(match bad {
            None => Check::pass(name),
            Some(i) => Check::fail(
                name,
                Some(Witness {
                    index: vec![i],
                    value: render_c(r[i].value()),
                }),
            ),
        });
    }

    fn scalar<C: JetCoeff>(&mut self, name: &str, r: &J<C>) {
        self.vector(name, std::slice::from_ref(r));
    }

    /// Checks an operator identity on each frame vector.
    fn on_frame<C: JetCoeff>(&mut self, name: &str, frame: &[V<C>; 3], f: impl Fn(&[J<C>]) -> V<C>) {
        let r: V<C> = frame.iter().flat_map(|v| f(v)).collect();
        self.vector(name, &r);
    }
}

fn lin<C: JetCoeff>(terms: &[(&J<C>, &[J<C>])]) -> V<C> {
    let mut acc: V<C> = terms[0].1.iter().map(|x| x.sub(x)).collect();
    for (c, v) in terms {
        acc = add(&acc, &scale(c, v));
    }
    acc
}

/// Runs the table of the type's frame lemma at the point.
pub(crate) fn tables<C: JetCoeff>(env: &Env<C>, tag: HTag) -> Result<Tables<C>> {
    let frame = build_frame(env, tag)?;
    let size = frame
        .vectors
        .iter()
        .flatten()
        .map(|c| c.value().to_f64().abs())
        .fold(1.0_f64, f64::max);
    let mut ck = Checker {
        tol: TOL * size * size,
        exact: is_exact::<C>(),
        out: Vec::new(),
    };
    let al = env.alpha.clone();
    let xi = &env.xi;
    let [e, f, _] = &frame.vectors;
    let mut coefficients = Vec::new();
    let mut xi_lambda = None;

    // h² − α²φ² = ½S(ξ,ξ)φ²
    let sxx = env.ric(xi, xi);
    let xiii = |ck: &mut Checker, name: &str| {
        let k = al.mul(&al).add(&sxx.scale(&crate::symbolic::rat(1, 2)));
        ck.on_frame(name, &frame.vectors, |v| sub(&env.h(&env.h(v)), &scale(&k, &env.phi(&env.phi(v)))));
    };

    match tag {
        HTag::Zero => {
            ck.vector("nabla_e_xi", &sub(&env.nabla(e, xi), &scale(&al, e)));
            ck.vector("nabla_phi_e_xi", &sub(&env.nabla(f, xi), &scale(&al, f)));
            ck.vector("nabla_xi_xi", &env.nabla(xi, xi));
        }
        HTag::H1 | HTag::H3 => {
            let lam = frame.lambda.clone().expect("λ is set for this type");
            let lam_inv = recip(&lam)?;
            let xl = env.dir(xi, &lam);
            let two_lam_inv = lam_inv.scale(&crate::symbolic::rat(1, 2));
            let sig_e = env.form(&env.sigma, e);
            let sig_f = env.form(&env.sigma, f);
            let a = env.g(&env.nabla(xi, e), f);
            let neg = |x: &J<C>| x.neg();
            if tag == HTag::H1 {
                let p = env.g(&env.nabla(e, e), f);
                let pp = env.g(&env.nabla(f, e), f).neg();
                ck.vector("nabla_e_e", &sub(&env.nabla(e, e), &lin(&[(&p, f), (&al, xi)])));
                ck.vector("nabla_e_phi_e", &sub(&env.nabla(e, f), &lin(&[(&p, e), (&neg(&lam), xi)])));
                ck.vector("nabla_e_xi", &sub(&env.nabla(e, xi), &lin(&[(&al, e), (&lam, f)])));
                ck.vector("nabla_phi_e_e", &sub(&env.nabla(f, e), &lin(&[(&neg(&pp), f), (&neg(&lam), xi)])));
                ck.vector("nabla_phi_e_phi_e", &sub(&env.nabla(f, f), &lin(&[(&neg(&pp), e), (&neg(&al), xi)])));
                ck.vector("nabla_phi_e_xi", &sub(&env.nabla(f, xi), &lin(&[(&al, f), (&neg(&lam), e)])));
                ck.vector("nabla_xi_e", &sub(&env.nabla(xi, e), &scale(&a, f)));
                ck.vector("nabla_xi_phi_e", &sub(&env.nabla(xi, f), &scale(&a, e)));
                ck.vector("bracket_e_xi", &sub(&env.bracket(e, xi), &lin(&[(&al, e), (&lam.sub(&a), f)])));
                ck.vector(
                    "bracket_phi_e_xi",
                    &sub(&env.bracket(f, xi), &lin(&[(&neg(&lam.add(&a)), e), (&al, f)])),
                );
                ck.vector("bracket_e_phi_e", &sub(&env.bracket(e, f), &lin(&[(&p, e), (&pp, f)])));
                let p_formula = sig_e.sub(&env.dir(f, &lam)).mul(&two_lam_inv);
                let pp_formula = sig_f.add(&env.dir(e, &lam)).mul(&two_lam_inv);
                ck.scalar("p_from_sigma", &p.sub(&p_formula));
                ck.scalar("p_prime_from_sigma", &pp.sub(&pp_formula));
                coefficients.push(("p", p.value().clone()));
                coefficients.push(("p_prime", pp.value().clone()));
                coefficients.push(("a1", a.value().clone()));
            } else {
                let b3 = env.g(&env.nabla(e, e), f);
                let b4 = env.g(&env.nabla(f, e), f);
                let apl = al.add(&lam);
                let lma = lam.sub(&al);
                ck.vector("nabla_e_e", &sub(&env.nabla(e, e), &lin(&[(&b3, f), (&apl, xi)])));
                ck.vector("nabla_e_phi_e", &sub(&env.nabla(e, f), &scale(&b3, e)));
                ck.vector("nabla_e_xi", &sub(&env.nabla(e, xi), &scale(&apl, e)));
                ck.vector("nabla_phi_e_e", &sub(&env.nabla(f, e), &scale(&b4, f)));
                ck.vector("nabla_phi_e_phi_e", &sub(&env.nabla(f, f), &lin(&[(&b4, e), (&lma, xi)])));
                ck.vector("nabla_phi_e_xi", &add(&env.nabla(f, xi), &scale(&lma, f)));
                ck.vector("nabla_xi_e", &sub(&env.nabla(xi, e), &scale(&a, f)));
                ck.vector("nabla_xi_phi_e", &sub(&env.nabla(xi, f), &scale(&a, e)));
                ck.vector("bracket_e_xi", &sub(&env.bracket(e, xi), &lin(&[(&apl, e), (&neg(&a), f)])));
                ck.vector(
                    "bracket_phi_e_xi",
                    &sub(&env.bracket(f, xi), &lin(&[(&neg(&a), e), (&neg(&lma), f)])),
                );
                ck.vector("bracket_e_phi_e", &sub(&env.bracket(e, f), &lin(&[(&b3, e), (&neg(&b4), f)])));
                let b3_formula = sig_f.add(&env.dir(f, &lam)).mul(&two_lam_inv).neg();
                let b4_formula = sig_e.sub(&env.dir(e, &lam)).mul(&two_lam_inv);
                ck.scalar("b3_from_sigma", &b3.sub(&b3_formula));
                ck.scalar("b4_from_sigma", &b4.sub(&b4_formula));
                coefficients.push(("b3", b3.value().clone()));
                coefficients.push(("b4", b4.value().clone()));
                coefficients.push(("a3", a.value().clone()));
            }
            // ∇_ξh = ξ(λ)s − 2a hφ with s = h/λ
            let xs = xl.mul(&lam_inv);
            let two_a = a.scale(&crate::symbolic::int(2));
            ck.on_frame("nabla_xi_h", &frame.vectors, |v| {
                let rhs = sub(&scale(&xs, &env.h(v)), &scale(&two_a, &env.h(&env.phi(v))));
                sub(&env.nabla_xi_h(v), &rhs)
            });
            xiii(&mut ck, "h_squared_relation");
            coefficients.push(("lambda", lam.value().clone()));
            coefficients.push(("xi_lambda", xl.value().clone()));
            xi_lambda = Some(xl.value().clone());
        }
        HTag::H2 => {
            let [e1, e2v, _] = &frame.vectors;
            let s = env.num(i64::from(frame.phi_sign.expect("set for H2")));
            let se = s.mul(&env.num(i64::from(frame.h_sign.expect("set for H2"))));
            let neg = |x: &J<C>| x.neg();
            let b1 = env.g(&env.nabla(e1, e2v), e1);
            let b2 = env.g(&env.nabla(e2v, e2v), e1);
            let a2 = env.g(&env.nabla(xi, e1), e2v);
            ck.vector("nabla_e1_e1", &sub(&env.nabla(e1, e1), &lin(&[(&neg(&b1), e1), (&se, xi)])));
            ck.vector("nabla_e1_e2", &sub(&env.nabla(e1, e2v), &lin(&[(&b1, e2v), (&neg(&al), xi)])));
            ck.vector("nabla_e1_xi", &sub(&env.nabla(e1, xi), &lin(&[(&al, e1), (&neg(&se), e2v)])));
            ck.vector("nabla_e2_e1", &sub(&env.nabla(e2v, e1), &lin(&[(&neg(&b2), e1), (&neg(&al), xi)])));
            ck.vector("nabla_e2_e2", &sub(&env.nabla(e2v, e2v), &scale(&b2, e2v)));
            ck.vector("nabla_e2_xi", &sub(&env.nabla(e2v, xi), &scale(&al, e2v)));
            ck.vector("nabla_xi_e1", &sub(&env.nabla(xi, e1), &scale(&a2, e1)));
            ck.vector("nabla_xi_e2", &add(&env.nabla(xi, e2v), &scale(&a2, e2v)));
            ck.vector(
                "bracket_e1_xi",
                &sub(&env.bracket(e1, xi), &lin(&[(&al.sub(&a2), e1), (&neg(&se), e2v)])),
            );
            ck.vector("bracket_e2_xi", &sub(&env.bracket(e2v, xi), &scale(&al.add(&a2), e2v)));
            ck.vector("bracket_e1_e2", &sub(&env.bracket(e1, e2v), &lin(&[(&b2, e1), (&b1, e2v)])));
            let sig1 = env.form(&env.sigma, e1);
            let b2_formula = se.mul(&sig1).scale(&crate::symbolic::rat(-1, 2));
            ck.scalar("b2_from_sigma", &b2.sub(&b2_formula));
            ck.scalar("sigma_e2", &env.form(&env.sigma, e2v));
            let two_sa = s.mul(&a2).scale(&crate::symbolic::int(2));
            ck.on_frame("nabla_xi_h", &frame.vectors, |v| {
                add(&env.nabla_xi_h(v), &scale(&two_sa, &env.h(&env.phi(v))))
            });
            ck.on_frame("h_squared_zero", &frame.vectors, |v| env.h(&env.h(v)));
            coefficients.push(("b1", b1.value().clone()));
            coefficients.push(("b2", b2.value().clone()));
            coefficients.push(("a2", a2.value().clone()));
        }
    }

    // metric pattern of the frame kind
    let [v0, v1, v2] = &frame.vectors;
    let pattern = match frame.kind {
        FrameKind::OrthonormalPhi => [(v0, v0, -1), (v1, v1, 1), (v2, v2, 1), (v0, v1, 0), (v0, v2, 0), (v1, v2, 0)],
        FrameKind::PseudoOrthonormal => [(v0, v0, 0), (v1, v1, 0), (v2, v2, 1), (v0, v1, 1), (v0, v2, 0), (v1, v2, 0)],
    };
    let metric: V<C> = pattern
        .iter()
        .map(|(x, y, want)| env.g(x, y).sub(&env.num(*want)).truncate(0))
        .collect();
    ck.vector("frame_metric", &metric);

    Ok(Tables {
        coefficients,
        checks: ck.out,
        xi_lambda,
        alpha: al.value().clone(),
        frame,
    })
}

/// Serializable view of a frame and its table.
#[derive(Clone, Debug, Serialize)]
pub struct FrameTables {
    pub kind: FrameKind,
    pub exact: bool,
    /// Components of the three frame vectors at the point.
    pub vectors: Vec<Vec<String>>,
    /// Metric signs `g(e_i,e_i)` for the orthonormal kind.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilons: Option<[i8; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_sign: Option<i8>,
    pub coefficients: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl<C: JetCoeff> Tables<C> {
    pub fn view(&self) -> FrameTables {
        let f = &self.frame;
        FrameTables {
            kind: f.kind,
            exact: is_exact::<C>(),
            vectors: f
                .vectors
                .iter()
                .map(|v| v.iter().map(|c| render_c(c.value())).collect())
                .collect(),
            epsilons: (f.kind == FrameKind::OrthonormalPhi).then_some([-1, 1, 1]),
            phi_sign: f.phi_sign,
            h_sign: f.h_sign,
            coefficients: self
                .coefficients
                .iter()
                .map(|(n, v)| (n.to_string(), render_c(v)))
                .collect(),
            checks: self.checks.clone(),
        }
    }
}
