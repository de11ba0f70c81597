//! The ordered list of checks.

use grassmann_core::{Rational, Scalar};
use rand_chacha::ChaCha8Rng;

use crate::checks::{curvature, exterior, fiber, invariants, jets, lie};
use crate::context::Model;
use crate::sample::rng_for;
use crate::tally::Tally;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lie,
    Fiber,
    Exterior,
    Curvature,
    Jets,
    Invariants,
    All,
}

impl Suite {
    pub fn contains(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// What a check body sees.
pub struct Env<'a, S: Scalar> {
    pub model: &'a Model<S>,
    pub seed: u64,
    pub tol: f64,
    pub id: &'static str,
}

impl<S: Scalar> Env<'_, S> {
    /// Fresh stream for this check; identical on every call.
    pub fn rng(&self) -> ChaCha8Rng {
        rng_for(self.seed, self.id)
    }
}

pub type CheckFn<S> = fn(&Env<'_, S>, &mut Tally<S>) -> grassmann_core::Result<()>;

pub struct CheckSpec {
    pub id: &'static str,
    pub suite: Suite,
    pub claim: &'static str,
    pub exact: CheckFn<Rational>,
    pub float: CheckFn<f64>,
}

macro_rules! check {
    ($id:literal, $suite:ident, $claim:literal, $f:path) => {
        CheckSpec { id: $id, suite: Suite::$suite, claim: $claim, exact: $f, float: $f }
    };
}

pub static REGISTRY: &[CheckSpec] = &[
    check!(
        "LC-01",
        Lie,
        "Freudenthal eigenvalues match matrix Casimirs on exterior powers and the adjoint, k <= 5",
        lie::lc01
    ),
    check!("LC-02", Lie, "Casimir operators commute with the representation", lie::lc02),
    check!(
        "LC-03",
        Lie,
        "Killing form is negative definite, invariant, 2k tr, and restricts to block su(k) with ratio n/k",
        lie::lc03
    ),
    check!("LC-04", Lie, "Casimir operators agree over a unimodular change of basis", lie::lc04),
    check!("FIB-01", Fiber, "E+ and E- commute", fiber::fib01),
    check!("FIB-02", Fiber, "{h, alpha} lies in E+- + R omega for alpha, hJ in the same E+-", fiber::fib02),
    check!("FIB-03", Fiber, "{h, alpha} = 2 alpha h lies in F for alpha, hJ in opposite factors", fiber::fib03),
    check!("FIB-04", Fiber, "lam2 restricted to su(n+-) is -(n-+/2n+-) B", fiber::fib04),
    check!(
        "FIB-05",
        Fiber,
        "Casimir of su(n+-) for lam2 is (n+-^2-1)/(n+ n-) on m and 2n+-/n-+ on the adjoint",
        fiber::fib05
    ),
    check!("FIB-06", Fiber, "Casimir of the isotropy algebra for -B on m is 1/2", fiber::fib06),
    check!("FIB-07", Fiber, "Lambda^{1,1} decomposition is orthogonal and reconstructs its input", fiber::fib07),
    check!("EXT-01", Exterior, "alpha -| (beta ^ gamma) = <a,b> c + <a,c> b + b a c + c a b", exterior::ext01),
    check!("EXT-02", Exterior, "sum_i e_i ^ (e_i ^ X)+- = -1/2 X -| Omega+-", exterior::ext02),
    check!("EXT-03", Exterior, "sum_i e_i -| (e_i ^ X)+- = ((n+-^2-1)/(n+ n-)) X", exterior::ext03),
    check!("EXT-04", Exterior, "alpha -| Omega+- = 2 alpha+- + 2 C+-(alpha)", exterior::ext04),
    check!(
        "EXT-05",
        Exterior,
        "C+- has eigenvalue 1/(n+ n-) on E+- + F and -(n+-^2-1)/(n+ n-) on R omega + E-+",
        exterior::ext05
    ),
    check!("EXT-06", Exterior, "Omega+- is independent of the orthogonal basis", exterior::ext06),
    check!("CUR-01", Curvature, "R omega = -omega/2, R = -n-+/2n on E+-, R = 0 on the complement", curvature::cur01),
    check!(
        "CUR-02",
        Curvature,
        "K(R) is Ric on TM, 1 + 2R on Lambda^2 and the isotropy Casimir on E+-",
        curvature::cur02
    ),
    check!("CUR-03", Curvature, "R(X,Y)+- = -(n-+/2n) (X ^ Y)+-", curvature::cur03),
    check!("KJ-01", Jets, "dX = (z/(n+ n-)) omega + (dX)+ + (dX)-", jets::kj01),
    check!("KJ-02", Jets, "nabla_Y z = omega(X, Y) under the calibrated jet convention", jets::kj02),
    check!("KJ-03", Jets, "derivatives of (dX)+- and f+-, d|X|^2, and the constant moment combination", jets::kj03),
    check!("KJ-04", Jets, "d e_X = X -| Omega, d* e_X = 0, Delta e_X = e_X, Delta z = z", jets::kj04),
    check!("KJ-05", Jets, "X -> (e_X, X -| Omega) is injective", jets::kj05),
    check!("KJ-06", Jets, "|(dX)+-|^2, z and |X|^2 are invariant under the isotropy group", jets::kj06),
    check!("INV-01", Invariants, "c[nu+] + c[nu-] + c[mu]/(n+ n-) = 0", invariants::inv01),
    check!("INV-02", Invariants, "(n-+ - n+-) c[nu+-] = (n-+ (n+-^2-1)/(n+- n)) c[mu]", invariants::inv02),
    check!("INV-03", Invariants, "c[|X|^2 z] = c[z^3]/2", invariants::inv03),
    check!("INV-04", Invariants, "c[|dX|^2 z] = 0", invariants::inv04),
    check!("INV-05", Invariants, "c[(dX)+-(JX,X)] = -c[nu+-] + ((n+-^2-1)/(2 n+- n)) c[mu]", invariants::inv05),
    check!("INV-06", Invariants, "projected <(dX)^2 J, (dX)+-> relation", invariants::inv06),
    check!("INV-07", Invariants, "c[nu+-] != 0, c[mu] = 0 iff n+ = n-, c[P1] != 0", invariants::inv07),
    check!("INV-08", Invariants, "h_*(X -| Omega) = omega -| (e_X ^ X -| Omega) for h = e_X J", invariants::inv08),
    check!("INV-09", Invariants, "<h_*(v -| Omega_a), v -| Omega_b> is a fixed multiple of h(v, v)", invariants::inv09),
    check!("INV-10", Invariants, "<alpha ^ beta, gamma ^ omega> = <{alpha, beta} J, gamma>", invariants::inv10),
    check!("INV-11", Invariants, "closed formula for c[term1] and its pointwise form", invariants::inv11),
    check!("INV-12", Invariants, "closed formula for c[term2] and its pointwise form", invariants::inv12),
    check!("INV-13", Invariants, "closed formula for c[Psi]", invariants::inv13),
    check!("INV-14", Invariants, "c[Psi] != 0", invariants::inv14),
    check!("INV-15", Invariants, "6 c[term1] - 4 c[term2] = c[Psi]", invariants::inv15),
    check!(
        "INV-16",
        Invariants,
        "defining equation and P0 gradient agree on su(n), n <= 7; parity classification",
        invariants::inv16
    ),
];

pub fn lookup(id: &str) -> Option<&'static CheckSpec> {
    REGISTRY.iter().find(|c| c.id == id)
}
