//! Concrete matrix representations: relation checks, the uniqueness-theorem
//! hypotheses, and evaluation of symbolic elements.
//!
//! A representation of a finite system assigns a projection `P_a` to each
//! atom and a partial isometry `S_{α,b}` to each label and atom `b` of
//! `gen I_α`. Composite `P_A`, `S_{α,B}` are sums over atoms; because sums
//! can hide mistakes in the atom data, the relations are checked both on
//! atoms and on a family of composite sets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::boolean::{AtomSet, Element};
use crate::dynamics::{RelativeGBDS, Word};
use crate::error::{Error, Result};
use crate::words::AlgElement;

pub type CMatrix = DMatrix<Complex64>;

/// Residual Frobenius norms at or below this count as zero.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Composite sets checked by [`validate_representation`] when the algebra
/// is too large to check every subset.
const COMPOSITE_SAMPLES: usize = 48;

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn zeros(dim: usize) -> CMatrix {
    CMatrix::zeros(dim, dim)
}

/// Anything that can evaluate symbolic elements as matrices.
pub trait Representation {
    fn dim(&self) -> usize;

    fn tolerance(&self) -> f64 {
        DEFAULT_TOLERANCE
    }

    fn evaluate(&self, sys: &RelativeGBDS, x: &AlgElement) -> Result<CMatrix>;

    /// `x` evaluates to a matrix of norm above the tolerance.
    fn separates(&self, sys: &RelativeGBDS, x: &AlgElement) -> Result<bool> {
        Ok(frobenius(&self.evaluate(sys, x)?) > self.tolerance())
    }
}

/// Matrices for `P_A` and `S_{α,B}` on arbitrary elements. The relation
/// checker only needs this, so it also serves infinite backends.
pub trait ElementRep {
    fn dim(&self) -> usize;
    fn p(&self, a: &Element) -> Result<CMatrix>;
    fn s(&self, label: usize, b: &Element) -> Result<CMatrix>;
}

/// A finite family `{P_a, S_{α,b}}` for a finite system.
#[derive(Clone, Debug)]
pub struct ConcreteRep {
    dim: usize,
    p: Vec<CMatrix>,
    s: BTreeMap<(usize, usize), CMatrix>,
    pub tolerance: f64,
}

impl ConcreteRep {
    /// `p[a]` for every atom; `s[(label, b)]` for every `b` in `gen I_label`.
    pub fn new(
        sys: &RelativeGBDS,
        dim: usize,
        p: Vec<CMatrix>,
        s: BTreeMap<(usize, usize), CMatrix>,
    ) -> Result<ConcreteRep> {
        let fv = sys.finite()?;
        let shape = |m: &CMatrix, what: &dyn Fn() -> String| {
            if m.nrows() != dim || m.ncols() != dim {
                Err(Error::ShapeError(format!(
                    "{} is {}×{}, expected {dim}×{dim}",
                    what(),
                    m.nrows(),
                    m.ncols()
                )))
            } else {
                Ok(())
            }
        };
        if p.len() != fv.n() {
            return Err(Error::ShapeError(format!(
                "{} atom projections for {} atoms",
                p.len(),
                fv.n()
            )));
        }
        for (a, m) in p.iter().enumerate() {
            shape(m, &|| format!("P_{}", sys.show_atoms(AtomSet::singleton(a))))?;
        }
        for l in 0..fv.num_labels() {
            for b in fv.ideal(l).iter() {
                if !s.contains_key(&(l, b)) {
                    return Err(Error::ShapeError(format!(
                        "missing S for label `{}` and atom {}",
                        sys.labels()[l],
                        sys.show_atoms(AtomSet::singleton(b))
                    )));
                }
            }
        }
        for (&(l, b), m) in &s {
            if l >= fv.num_labels() || !fv.ideal(l).contains(b) {
                return Err(Error::ShapeError(format!(
                    "S given for label #{l} and atom #{b}, which is not in that label's ideal"
                )));
            }
            shape(m, &|| format!("S_{{{},{}}}", sys.labels()[l], sys.show_atoms(AtomSet::singleton(b))))?;
        }
        Ok(ConcreteRep {
            dim,
            p,
            s,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atom_projection(&self, a: usize) -> &CMatrix {
        &self.p[a]
    }

    pub fn isometry(&self, label: usize, b: usize) -> Option<&CMatrix> {
        self.s.get(&(label, b))
    }

    pub fn isometries(&self) -> impl Iterator<Item = (&(usize, usize), &CMatrix)> {
        self.s.iter()
    }

    pub fn p_set(&self, a: AtomSet) -> CMatrix {
        a.iter().fold(zeros(self.dim), |acc, x| acc + &self.p[x])
    }

    /// `S_{label,B}`; atoms of `B` outside the label's ideal are rejected.
    pub fn s_set(&self, label: usize, b: AtomSet) -> Result<CMatrix> {
        b.iter().try_fold(zeros(self.dim), |acc, x| match self.s.get(&(label, x)) {
            Some(m) => Ok(acc + m),
            None => Err(Error::InvalidGenerator(format!(
                "atom #{x} is not in the ideal of label #{label}"
            ))),
        })
    }

    /// `S_{α_1,I_1} S_{α_2,I_2} ⋯ S_{α_n,I_n}` with `I_k` the ideal
    /// generator of the prefix `α_1⋯α_k`.
    fn word_isometry(&self, sys: &RelativeGBDS, w: &Word) -> Result<CMatrix> {
        let fv = sys.finite()?;
        let mut m = CMatrix::identity(self.dim, self.dim);
        for k in 1..=w.len() {
            let prefix = Word::from_letters(w.letters()[..k].to_vec());
            let l = w.letters()[k - 1];
            m = m * self.s_set(l, fv.word_ideal(&prefix))?;
        }
        Ok(m)
    }
}

impl Representation for ConcreteRep {
    fn dim(&self) -> usize {
        self.dim
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `(α,a,β) ↦ S_α P_a S_β*`, extended linearly.
    fn evaluate(&self, sys: &RelativeGBDS, x: &AlgElement) -> Result<CMatrix> {
        let calc = crate::words::Calculus::new(sys)?;
        calc.check(x)?;
        let mut cache: HashMap<Word, CMatrix> = HashMap::new();
        let mut out = zeros(self.dim);
        for (t, c) in x.terms() {
            for w in [&t.left, &t.right] {
                if !cache.contains_key(w) {
                    cache.insert(w.clone(), self.word_isometry(sys, w)?);
                }
            }
            let coeff = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            let term = &cache[&t.left] * &self.p[t.atom] * cache[&t.right].adjoint();
            out += term * coeff;
        }
        Ok(out)
    }
}

impl ElementRep for ConcreteRep {
    fn dim(&self) -> usize {
        self.dim
    }

    fn p(&self, a: &Element) -> Result<CMatrix> {
        let atoms = a
            .atoms()
            .ok_or_else(|| Error::UnsupportedBackend("finite representation".into()))?;
        Ok(self.p_set(atoms))
    }

    fn s(&self, label: usize, b: &Element) -> Result<CMatrix> {
        let atoms = b
            .atoms()
            .ok_or_else(|| Error::UnsupportedBackend("finite representation".into()))?;
        self.s_set(label, atoms)
    }
}

/// One violated instance of a relation.
#[derive(Clone, Debug)]
pub struct RelationFailure {
    /// `(i)` to `(iv)`, or `projection` for the atom-level checks.
    pub relation: String,
    pub instance: String,
    pub residual: f64,
    pub lhs: CMatrix,
    pub rhs: CMatrix,
}

#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub checks: usize,
    pub max_residual: f64,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, relation: &str, instance: impl FnOnce() -> String, lhs: CMatrix, rhs: CMatrix, tol: f64) {
        let residual = frobenius(&(&lhs - &rhs));
        self.checks += 1;
        self.max_residual = self.max_residual.max(residual);
        if residual > tol {
            self.failures.push(RelationFailure {
                relation: relation.to_string(),
                instance: instance(),
                residual,
                lhs,
                rhs,
            });
        }
    }
}

fn show_matrix(m: &CMatrix) -> String {
    let rows: Vec<String> = m
        .row_iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .map(|z| {
                    if z.im.abs() < 1e-12 {
                        format!("{}", z.re)
                    } else {
                        format!("{}{:+}i", z.re, z.im)
                    }
                })
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} checks, {} failed, max residual {:.3e}",
            self.checks,
            self.failures.len(),
            self.max_residual
        )?;
        for x in &self.failures {
            writeln!(f, "relation {} fails for {}: residual {:.3e}", x.relation, x.instance, x.residual)?;
            writeln!(f, "  lhs = {}", show_matrix(&x.lhs))?;
            writeln!(f, "  rhs = {}", show_matrix(&x.rhs))?;
        }
        Ok(())
    }
}

/// Checks the four defining relations on every element of `family` (and on
/// pairs of them):
///
/// * (i) `P_∅ = 0`, `P_{A∩B} = P_A P_B`, `P_{A∪B} = P_A + P_B − P_{A∩B}`;
/// * (ii) `P_A S_{α,B} = S_{α,B} P_{θ_α(A)}` for `B ∈ I_α`;
/// * (iii) `S*_{α,B} S_{α′,B′} = δ_{α,α′} P_{B∩B′}`;
/// * (iv) `P_A = Σ_{α∈Δ_A} S_{α,θ_α(A)} S*_{α,θ_α(A)}` for `A ∈ J`.
pub fn validate_on_elements(
    sys: &RelativeGBDS,
    rep: &dyn ElementRep,
    family: &[Element],
    tol: f64,
) -> Result<RelationReport> {
    let bds = sys.bds();
    let gen = sys.generalized();
    let dim = rep.dim();
    let mut report = RelationReport::default();
    let ps = family.iter().map(|a| rep.p(a)).collect::<Result<Vec<_>>>()?;
    let empty = Element::empty(sys.algebra());
    report.record("(i)", || "P_∅ = 0".into(), rep.p(&empty)?, zeros(dim), tol);
    for (i, a) in family.iter().enumerate() {
        report.record("(i)", || format!("P_{a} self-adjoint"), ps[i].clone(), ps[i].adjoint(), tol);
        for (j, b) in family.iter().enumerate().skip(i) {
            let meet = a.intersect(b)?;
            let join = a.union(b)?;
            let pm = rep.p(&meet)?;
            report.record("(i)", || format!("P_{{{a} ∩ {b}}}"), &ps[i] * &ps[j], pm.clone(), tol);
            report.record("(i)", || format!("P_{{{a} ∪ {b}}}"), &ps[i] + &ps[j] - &pm, rep.p(&join)?.clone(), tol);
        }
    }
    let n_labels = bds.labels().len();
    let mut members: Vec<Vec<(usize, CMatrix)>> = vec![Vec::new(); n_labels];
    for l in 0..n_labels {
        for (i, b) in family.iter().enumerate() {
            if gen.ideal(l).contains(b)? {
                members[l].push((i, rep.s(l, b)?));
            }
        }
    }
    for l in 0..n_labels {
        let label = &bds.labels()[l];
        for (i, a) in family.iter().enumerate() {
            let pt = rep.p(&bds.action(l).apply(a)?)?;
            for (j, sb) in &members[l] {
                let b = &family[*j];
                report.record(
                    "(ii)",
                    || format!("P_{a} S_{{{label},{b}}}"),
                    &ps[i] * sb,
                    sb * &pt,
                    tol,
                );
            }
        }
        for (i, sb) in &members[l] {
            for l2 in 0..n_labels {
                for (j, sb2) in &members[l2] {
                    let rhs = if l == l2 {
                        rep.p(&family[*i].intersect(&family[*j])?)?
                    } else {
                        zeros(dim)
                    };
                    report.record(
                        "(iii)",
                        || format!("S*_{{{label},{}}} S_{{{},{}}}", family[*i], bds.labels()[l2], family[*j]),
                        sb.adjoint() * sb2,
                        rhs,
                        tol,
                    );
                }
            }
        }
    }
    for (i, a) in family.iter().enumerate() {
        if !sys.relative().contains(a)? {
            continue;
        }
        let mut sum = zeros(dim);
        for l in bds.delta(a)? {
            let img = bds.action(l).apply(a)?;
            let s = rep.s(l, &img)?;
            sum += &s * s.adjoint();
        }
        report.record("(iv)", || format!("summation at {a}"), ps[i].clone(), sum, tol);
    }
    Ok(report)
}

/// Atom-level checks plus the relations on composite sets (every subset for
/// up to six atoms, otherwise a seeded sample).
pub fn validate_representation(sys: &RelativeGBDS, r: &ConcreteRep) -> Result<RelationReport> {
    let fv = sys.finite()?;
    let tol = r.tolerance;
    let mut report = RelationReport::default();
    let show = |a: usize| sys.show_atoms(AtomSet::singleton(a));
    for a in 0..fv.n() {
        let p = &r.p[a];
        report.record("(i)", || format!("P_{} idempotent", show(a)), p * p, p.clone(), tol);
        report.record("(i)", || format!("P_{} self-adjoint", show(a)), p.clone(), p.adjoint(), tol);
        for b in a + 1..fv.n() {
            report.record(
                "(i)",
                || format!("P_{} P_{} = 0", show(a), show(b)),
                p * &r.p[b],
                zeros(r.dim),
                tol,
            );
        }
    }
    let mut family: Vec<Element> = Vec::new();
    let top = fv.top();
    if fv.n() <= 6 {
        for a in top.subsets() {
            family.push(Element::from_atoms(sys.algebra(), a)?);
        }
    } else {
        let mut rng = StdRng::seed_from_u64(0xfa11);
        for a in 0..fv.n() {
            family.push(Element::from_atoms(sys.algebra(), AtomSet::singleton(a))?);
        }
        for _ in 0..COMPOSITE_SAMPLES {
            let mask = AtomSet(rng.random::<u64>() & top.0);
            family.push(Element::from_atoms(sys.algebra(), mask)?);
        }
        for l in 0..fv.num_labels() {
            family.push(Element::from_atoms(sys.algebra(), fv.ideal(l))?);
        }
        family.push(Element::from_atoms(sys.algebra(), fv.relative())?);
    }
    let composite = validate_on_elements(sys, r, &family, tol)?;
    report.checks += composite.checks;
    report.max_residual = report.max_residual.max(composite.max_residual);
    report.failures.extend(composite.failures);
    Ok(report)
}

/// Result of one uniqueness-theorem hypothesis.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionResult {
    pub passed: bool,
    /// No instance to check.
    pub vacuous: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GiutReport {
    /// `P_A ≠ 0` for `A ≠ ∅`, checked on atoms.
    pub nonzero_projections: ConditionResult,
    /// Defect projections nonzero on regular atoms outside `J`.
    pub nonzero_defects: ConditionResult,
    /// The gauge action cannot be decided from one representation.
    pub gauge_action: &'static str,
}

pub const GAUGE_NOT_CHECKED: &str =
    "not checked: a single representation does not determine a gauge action; \
     symbolic elements carry the degree grading instead";

impl fmt::Display for GiutReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |c: &ConditionResult| match (&c.witness, c.passed, c.vacuous) {
            (_, true, true) => "pass (vacuous)".to_string(),
            (_, true, false) => "pass".to_string(),
            (Some(w), false, _) => format!("FAIL, witness {w}"),
            (None, false, _) => "FAIL".to_string(),
        };
        writeln!(f, "(1) nonzero projections: {}", line(&self.nonzero_projections))?;
        writeln!(f, "(2) nonzero defects on regular atoms outside J: {}", line(&self.nonzero_defects))?;
        writeln!(f, "(3) gauge action: {}", self.gauge_action)
    }
}

/// Checks the hypotheses of the gauge-invariant uniqueness theorem that one
/// representation can decide.
pub fn check_giut(sys: &RelativeGBDS, r: &ConcreteRep) -> Result<GiutReport> {
    let fv = sys.finite()?;
    let show = |a: usize| sys.show_atoms(AtomSet::singleton(a));
    let zero_atom = (0..fv.n()).find(|&a| frobenius(&r.p[a]) <= r.tolerance);
    let nonzero_projections = ConditionResult {
        passed: zero_atom.is_none(),
        vacuous: fv.n() == 0,
        witness: zero_atom.map(show),
    };
    let candidates = fv.regular() - fv.relative();
    let calc = crate::words::Calculus::new(sys)?;
    let mut bad = None;
    for a in candidates.iter() {
        let m = r.evaluate(sys, &calc.defect(a, AtomSet::EMPTY))?;
        if frobenius(&m) <= r.tolerance {
            bad = Some(a);
            break;
        }
    }
    Ok(GiutReport {
        nonzero_projections,
        nonzero_defects: ConditionResult {
            passed: bad.is_none(),
            vacuous: candidates.is_empty(),
            witness: bad.map(show),
        },
        gauge_action: GAUGE_NOT_CHECKED,
    })
}

/// Largest basis [`path_representation`] will build.
pub const PATH_BASIS_LIMIT: usize = 512;

/// The representation on paths ending outside `J`.
///
/// The basis is `e_{μ,a}` for words `μ` and atoms `a ∉ gen J` with
/// `a ∈ I_μ`, and
///
/// * `P_A e_{μ,a} = [a ⊆ θ_μ(A)] e_{μ,a}`,
/// * `S_{α,B} e_{μ,a} = [a ⊆ θ_μ(B)] e_{αμ,a}`.
///
/// It is finite exactly when no long word has a nonempty ideal, i.e. when
/// the dual maps have no cycle reachable from an ideal; otherwise this
/// returns `UnsupportedBackend`.
pub fn path_representation(sys: &RelativeGBDS) -> Result<ConcreteRep> {
    let fv = sys.finite()?;
    let n = fv.n();
    let outside = fv.top() - fv.relative();
    // words with a nonempty ideal, by appending letters
    let mut words = vec![Word::empty()];
    let mut frontier: Vec<Word> = (0..fv.num_labels())
        .map(Word::letter)
        .filter(|w| !fv.word_ideal(w).is_empty())
        .collect();
    while !frontier.is_empty() {
        if frontier[0].len() > n + 1 {
            return Err(Error::UnsupportedBackend(
                "the path representation is infinite for a system with cycles".into(),
            ));
        }
        let mut next = Vec::new();
        for w in frontier {
            for l in 0..fv.num_labels() {
                let ext = w.push(l);
                if !fv.word_ideal(&ext).is_empty() {
                    next.push(ext);
                }
            }
            words.push(w);
        }
        frontier = next;
    }
    let mut basis: Vec<(Word, usize)> = Vec::new();
    for w in &words {
        for a in (fv.word_ideal(w) & outside).iter() {
            basis.push((w.clone(), a));
        }
    }
    if basis.len() > PATH_BASIS_LIMIT {
        return Err(Error::SizeLimit {
            atoms: basis.len(),
            limit: PATH_BASIS_LIMIT,
        });
    }
    let index: HashMap<(Word, usize), usize> =
        basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let dim = basis.len();
    let one = Complex64::new(1.0, 0.0);
    let mut p = vec![zeros(dim); n];
    for x in 0..n {
        for (i, (mu, a)) in basis.iter().enumerate() {
            if fv.theta_word(mu, AtomSet::singleton(x)).contains(*a) {
                p[x][(i, i)] = one;
            }
        }
    }
    let mut s = BTreeMap::new();
    for l in 0..fv.num_labels() {
        for b in fv.ideal(l).iter() {
            let mut m = zeros(dim);
            for (i, (mu, a)) in basis.iter().enumerate() {
                if fv.theta_word(mu, AtomSet::singleton(b)).contains(*a) {
                    let target = index.get(&(Word::letter(l).concat(mu), *a)).ok_or_else(|| {
                        Error::InternalInvariantViolation("path basis is not closed under prefixing".into())
                    })?;
                    m[(*target, i)] = one;
                }
            }
            s.insert((l, b), m);
        }
    }
    ConcreteRep::new(sys, dim, p, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::finite_system;
    use crate::words::{Calculus, NormalTerm};

    const V: usize = 0;
    const W: usize = 1;

    fn one_edge(j: Option<AtomSet>) -> RelativeGBDS {
        finite_system(&["v", "w"], &["e"], vec![vec![None, Some(V)]], None, j).unwrap()
    }

    fn real(rows: &[[f64; 2]; 2]) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    fn standard(sys: &RelativeGBDS, s: CMatrix) -> ConcreteRep {
        let p = vec![real(&[[1., 0.], [0., 0.]]), real(&[[0., 0.], [0., 1.]])];
        ConcreteRep::new(sys, 2, p, BTreeMap::from([((0, W), s)])).unwrap()
    }

    #[test]
    fn standard_rep_validates() {
        let sys = one_edge(None);
        let r = standard(&sys, real(&[[0., 1.], [0., 0.]]));
        let rep = validate_representation(&sys, &r).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn transposed_isometry_fails_commutation() {
        let sys = one_edge(None);
        let r = standard(&sys, real(&[[0., 0.], [1., 0.]]));
        let rep = validate_representation(&sys, &r).unwrap();
        assert!(rep.failures.iter().any(|f| f.relation == "(ii)" && f.residual > 0.5));
    }

    #[test]
    fn shape_errors() {
        let sys = one_edge(None);
        let bad = CMatrix::zeros(3, 3);
        let p = vec![bad.clone(), bad];
        assert!(matches!(
            ConcreteRep::new(&sys, 2, p, BTreeMap::new()),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn giut_conditions() {
        let sys = one_edge(None);
        let r = standard(&sys, real(&[[0., 1.], [0., 0.]]));
        let g = check_giut(&sys, &r).unwrap();
        assert!(g.nonzero_projections.passed);
        assert!(g.nonzero_defects.passed && g.nonzero_defects.vacuous);

        let toeplitz = one_edge(Some(AtomSet::EMPTY));
        let r = standard(&toeplitz, real(&[[0., 1.], [0., 0.]]));
        let g = check_giut(&toeplitz, &r).unwrap();
        assert!(!g.nonzero_defects.passed);
        assert_eq!(g.nonzero_defects.witness.as_deref(), Some("{v}"));

        let p = vec![CMatrix::zeros(2, 2), real(&[[0., 0.], [0., 1.]])];
        let r = ConcreteRep::new(&sys, 2, p, BTreeMap::from([((0, W), real(&[[0., 1.], [0., 0.]]))])).unwrap();
        let g = check_giut(&sys, &r).unwrap();
        assert_eq!(g.nonzero_projections.witness.as_deref(), Some("{v}"));
    }

    #[test]
    fn evaluation() {
        let sys = one_edge(None);
        let r = standard(&sys, real(&[[0., 1.], [0., 0.]]));
        let c = Calculus::new(&sys).unwrap();
        let m = r.evaluate(&sys, &c.defect(V, AtomSet::EMPTY)).unwrap();
        assert!(frobenius(&m) < 1e-12);
        let pw = r.evaluate(&sys, &c.p(AtomSet::singleton(W))).unwrap();
        assert_eq!(pw, real(&[[0., 0.], [0., 1.]]));
        let ewe = AlgElement::from_term(NormalTerm::new(Word::letter(0), W, Word::letter(0)));
        assert_eq!(r.evaluate(&sys, &ewe).unwrap(), real(&[[1., 0.], [0., 0.]]));
    }

    #[test]
    fn path_rep_of_one_edge_is_standard() {
        let sys = one_edge(None);
        let r = path_representation(&sys).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(validate_representation(&sys, &r).unwrap().passed());
        let toeplitz = one_edge(Some(AtomSet::EMPTY));
        let r = path_representation(&toeplitz).unwrap();
        assert_eq!(r.dim(), 3);
        assert!(validate_representation(&toeplitz, &r).unwrap().passed());
        let g = check_giut(&toeplitz, &r).unwrap();
        assert!(g.nonzero_projections.passed && g.nonzero_defects.passed);
    }

    #[test]
    fn cycles_have_no_finite_path_rep() {
        let sys = finite_system(&["v"], &["e"], vec![vec![Some(0)]], None, None).unwrap();
        assert!(matches!(path_representation(&sys), Err(Error::UnsupportedBackend(_))));
    }
}
