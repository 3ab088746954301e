//! Worked examples on small systems, mostly the one-edge graph `v → w`
//! (`θ_e` dual to `w ↦ v`).

use num::BigRational;

use gbds::boolean::{Algebra, AtomSet, Element, FinCofin, Ideal, Value};
use gbds::constructions::{import_labelled_graph, remark_example, tilde, Edge, LabelledGraph};
use gbds::dynamics::{finite_system, validate_system, RelativeGBDS, Violation, Word};
use gbds::lattice::{
    admissible_pairs, compute_bh, enumerate_hsat, is_hereditary, is_j_saturated, quotient_system,
    saturation_closure, Pair, DEFAULT_MAX_ATOMS,
};
use gbds::repr::{check_giut, frobenius, validate_representation, CMatrix, ConcreteRep, Representation};
use gbds::syntax::parse_element;
use gbds::words::{AlgElement, Calculus, Equality, Membership, NormalTerm, DEFAULT_SLACK};
use gbds::Error;

const V: usize = 0;
const W: usize = 1;
const E: usize = 0;

fn v() -> AtomSet {
    AtomSet::singleton(V)
}

fn w() -> AtomSet {
    AtomSet::singleton(W)
}

fn vw() -> AtomSet {
    v() | w()
}

fn sys1(j: Option<AtomSet>) -> RelativeGBDS {
    finite_system(&["v", "w"], &["e"], vec![vec![None, Some(V)]], None, j).unwrap()
}

fn term(left: &[usize], atom: usize, right: &[usize]) -> NormalTerm {
    NormalTerm::new(Word::from_letters(left.to_vec()), atom, Word::from_letters(right.to_vec()))
}

fn el(t: NormalTerm) -> AlgElement {
    AlgElement::from_term(t)
}

fn e() -> Word {
    Word::letter(E)
}

#[test]
fn finite_algebras() {
    let alg = Algebra::finite(&["v", "w"]).unwrap();
    assert_eq!(alg.cardinality(), Some(4));
    assert_eq!(Algebra::finite::<&str>(&[]).unwrap().cardinality(), Some(1));
    assert!(matches!(Algebra::finite(&["v", "v"]), Err(Error::DuplicateAtom(_))));
    let a = Element::from_labels(&alg, &["v"]).unwrap();
    let b = Element::from_labels(&alg, &["w"]).unwrap();
    assert_eq!(a.union(&b).unwrap().atoms(), Some(vw()));
    assert!(a.difference(&a).unwrap().is_empty());
}

#[test]
fn cofinite_difference() {
    let alg = Algebra::fin_cofin();
    let a = Element::new(alg.clone(), Value::FinCofin(FinCofin::cofinite([1]))).unwrap();
    let b = Element::new(alg.clone(), Value::FinCofin(FinCofin::finite([2, 3]))).unwrap();
    let want = Element::new(alg, Value::FinCofin(FinCofin::cofinite([1, 2, 3]))).unwrap();
    assert!(a.difference(&b).unwrap().equals(&want).unwrap());
}

#[test]
fn ideals() {
    let alg = Algebra::finite(&["v", "w"]).unwrap();
    let i = Ideal::principal_atoms(&alg, vw()).unwrap();
    assert!(i.contains(&Element::from_atoms(&alg, w()).unwrap()).unwrap());
    let j = Ideal::principal_atoms(&alg, v())
        .unwrap()
        .join(&Ideal::principal_atoms(&alg, w()).unwrap())
        .unwrap();
    assert_eq!(j.generator_atoms(), Some(vw()));

    let pair = Algebra::product(Algebra::fin_subsets(), Algebra::fin_cofin());
    let fc = |f: FinCofin| {
        Element::new(pair.clone(), Value::Pair(Box::new(Value::Finite(Default::default())), Box::new(Value::FinCofin(f))))
            .unwrap()
    };
    let top_right = Ideal::principal(fc(FinCofin::cofinite([])));
    assert!(top_right.contains(&fc(FinCofin::cofinite([5]))).unwrap());
}

#[test]
fn actions_and_words() {
    let s = sys1(None);
    let fv = s.finite().unwrap();
    assert_eq!(fv.theta(E, v()), w());
    assert_eq!(fv.theta(E, AtomSet::EMPTY), AtomSet::EMPTY);
    let bds = s.bds();
    let alg = s.algebra();
    let atoms = |x: AtomSet| Element::from_atoms(alg, x).unwrap();
    assert!(bds.apply_word(&bds.parse_word("ee").unwrap(), &atoms(v())).unwrap().is_empty());
    assert_eq!(bds.apply_word(&Word::empty(), &atoms(vw())).unwrap().atoms(), Some(vw()));
    assert_eq!(bds.apply_word(&e(), &atoms(vw())).unwrap().atoms(), Some(w()));
    assert_eq!(bds.delta(&atoms(v())).unwrap(), vec![E]);
    assert!(bds.delta(&atoms(w())).unwrap().is_empty());
    assert!(bds.delta(&atoms(AtomSet::EMPTY)).unwrap().is_empty());
}

#[test]
fn regular_range_and_word_ideals() {
    let s = sys1(None);
    let fv = s.finite().unwrap();
    assert_eq!(fv.regular(), v());
    assert_eq!(s.bds().range_ideal(E).unwrap().generator_atoms(), Some(w()));
    assert_eq!(fv.word_ideal(&e()), w());
    assert_eq!(fv.word_ideal(&Word::from_letters(vec![E, E])), AtomSet::EMPTY);
    assert_eq!(fv.word_ideal(&Word::empty()), vw());

    let dead = finite_system(&["v", "w"], &["e"], vec![vec![None, None]], None, None).unwrap();
    let dfv = dead.finite().unwrap();
    assert_eq!(dfv.regular(), AtomSet::EMPTY);
    assert_eq!(dfv.ideal(E), AtomSet::EMPTY);
}

#[test]
fn relative_system_validity() {
    assert!(validate_system(&sys1(Some(v()))).unwrap().is_valid());
    match finite_system(&["v", "w"], &["e"], vec![vec![None, Some(V)]], None, Some(w())) {
        Err(Error::InvalidSystem(r)) => {
            assert!(matches!(&r.violations[..], [Violation::RelativeNotRegular { witness }] if witness == "{w}"))
        }
        other => panic!("{other:?}"),
    }
    match finite_system(&["v", "w"], &["e"], vec![vec![None, Some(V)]], Some(vec![AtomSet::EMPTY]), None) {
        Err(Error::InvalidSystem(r)) => {
            assert!(matches!(&r.violations[..], [Violation::RangeExceedsIdeal { witness, .. }] if witness == "{w}"))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn hereditary_saturated_sets() {
    let s = sys1(None);
    let fv = s.finite().unwrap();
    assert!(is_hereditary(fv, AtomSet::EMPTY) && is_j_saturated(fv, AtomSet::EMPTY));
    assert!(is_hereditary(fv, w()) && !is_j_saturated(fv, w()));
    assert!(!is_hereditary(fv, v()));
    assert_eq!(saturation_closure(fv, w()), vw());
    assert_eq!(saturation_closure(fv, v()), vw());
    assert_eq!(saturation_closure(fv, AtomSet::EMPTY), AtomSet::EMPTY);

    assert_eq!(enumerate_hsat(fv, DEFAULT_MAX_ATOMS).unwrap(), vec![AtomSet::EMPTY, vw()]);
    let toeplitz = sys1(Some(AtomSet::EMPTY));
    assert_eq!(
        enumerate_hsat(toeplitz.finite().unwrap(), DEFAULT_MAX_ATOMS).unwrap(),
        vec![AtomSet::EMPTY, w(), vw()]
    );
}

#[test]
fn quotients() {
    let s = sys1(None);
    let fv = s.finite().unwrap();
    assert_eq!(compute_bh(fv, AtomSet::EMPTY), v());
    assert_eq!(compute_bh(fv, vw()), vw());
    let toeplitz = sys1(Some(AtomSet::EMPTY));
    let tfv = toeplitz.finite().unwrap();
    assert_eq!(compute_bh(tfv, w()), w());

    let q = quotient_system(&toeplitz, w(), None).unwrap();
    assert_eq!(q.atoms, vec![V]);
    assert_eq!(q.system.finite().unwrap().dual(E).image(0), None);
    assert_eq!(quotient_system(&toeplitz, AtomSet::EMPTY, None).unwrap().atoms, vec![V, W]);
    assert_eq!(quotient_system(&s, vw(), None).unwrap().system.finite().unwrap().n(), 0);
}

#[test]
fn pair_lattices() {
    let lat = admissible_pairs(&sys1(None), DEFAULT_MAX_ATOMS).unwrap();
    assert_eq!(
        lat.pairs(),
        &[Pair { h: AtomSet::EMPTY, s: v() }, Pair { h: vw(), s: vw() }]
    );
    assert_eq!(admissible_pairs(&sys1(Some(AtomSet::EMPTY)), DEFAULT_MAX_ATOMS).unwrap().len(), 4);

    let isolated = finite_system(&["u", "w"], &["e"], vec![vec![None, None]], None, None).unwrap();
    let lat = admissible_pairs(&isolated, DEFAULT_MAX_ATOMS).unwrap();
    assert_eq!(lat.len(), 4);
    let single = |a: AtomSet| lat.index_of(&Pair { h: a, s: a }).unwrap();
    let bottom = single(AtomSet::EMPTY);
    assert_eq!(lat.meet(single(AtomSet::singleton(0)), single(AtomSet::singleton(1))), Some(bottom));
    assert!(lat.is_lattice());
}

#[test]
fn ideal_generators_and_recovery() {
    let s = sys1(None);
    let calc = Calculus::new(&s).unwrap();
    let defect = &calc.p(v()) - &calc.mul(&calc.s(&e(), w()).unwrap(), &calc.s(&e(), w()).unwrap().adjoint()).unwrap();
    let bottom = Pair { h: AtomSet::EMPTY, s: v() };
    assert_eq!(calc.ideal_generators(&bottom).unwrap(), vec![defect.clone()]);
    let top = Pair { h: vw(), s: vw() };
    assert_eq!(calc.ideal_generators(&top).unwrap(), vec![calc.p(v()), calc.p(w())]);
    for g in calc.ideal_generators(&bottom).unwrap() {
        assert_eq!(g.degree(), Some(0));
    }

    assert!(calc.ideal_membership(&defect, &bottom, 2).unwrap().is_in());
    assert_eq!(calc.ideal_membership(&calc.p(w()), &bottom, 2).unwrap(), Membership::NotIn);
    assert!(calc.ideal_membership(&AlgElement::zero(), &bottom, 2).unwrap().is_in());

    let toeplitz = sys1(Some(AtomSet::EMPTY));
    let tcalc = Calculus::new(&toeplitz).unwrap();
    let zero = Pair { h: AtomSet::EMPTY, s: AtomSet::EMPTY };
    assert!(tcalc.ideal_generators(&zero).unwrap().is_empty());
    for p in admissible_pairs(&toeplitz, DEFAULT_MAX_ATOMS).unwrap().pairs() {
        assert_eq!(tcalc.recover_pair(p, 4).unwrap(), *p);
    }
}

#[test]
fn term_products() {
    let s = sys1(None);
    let calc = Calculus::new(&s).unwrap();
    assert_eq!(calc.term_mul(&term(&[], W, &[E]), &term(&[E], W, &[])).unwrap(), el(term(&[], W, &[])));
    assert!(calc.term_mul(&term(&[E], W, &[]), &term(&[], V, &[])).unwrap().is_zero());
    for a in [V, W] {
        assert_eq!(calc.term_mul(&term(&[], a, &[]), &term(&[], a, &[])).unwrap(), el(term(&[], a, &[])));
    }
    assert_eq!(term(&[E], W, &[]).adjoint(), term(&[], W, &[E]));
    assert_eq!(term(&[E], W, &[E]).adjoint(), term(&[E], W, &[E]));
    assert_eq!(calc.p(vw()), &el(term(&[], V, &[])) + &el(term(&[], W, &[])));
    let sew = calc.s(&e(), w()).unwrap();
    assert_eq!(calc.mul(&sew.adjoint(), &sew).unwrap(), calc.p(w()));
    assert_eq!(calc.mul(&calc.p(v()), &sew).unwrap(), sew);
    assert_eq!(sew.degree(), Some(1));
    assert_eq!(calc.p(vw()).degree(), Some(0));
}

#[test]
fn relative_expansion() {
    let s = sys1(None);
    let calc = Calculus::new(&s).unwrap();
    assert_eq!(calc.ck_expand(&term(&[], V, &[])).unwrap(), el(term(&[E], W, &[E])));
    let defect = parse_element(&s, "p[v] - s[e;w] * s[e;w]^").unwrap();
    assert!(calc.normal_form(&defect, 1).is_zero());

    let toeplitz = sys1(Some(AtomSet::EMPTY));
    let tcalc = Calculus::new(&toeplitz).unwrap();
    let tdefect = parse_element(&toeplitz, "p[v] - s[e;w] * s[e;w]^").unwrap();
    assert_eq!(tcalc.normal_form(&tdefect, 1), tdefect);
}

#[test]
fn equality_modulo_relations() {
    let s = sys1(None);
    let calc = Calculus::new(&s).unwrap();
    let sew = calc.s(&e(), w()).unwrap();
    let sst = calc.mul(&sew, &sew.adjoint()).unwrap();
    assert_eq!(calc.eq_modulo_ck(&calc.p(v()), &sst, DEFAULT_SLACK).unwrap(), Equality::Equal);
    assert_eq!(calc.eq_modulo_ck(&calc.p(v()), &calc.p(w()), DEFAULT_SLACK).unwrap(), Equality::Distinct);
    assert_eq!(calc.eq_modulo_ck(&calc.p(v()), &AlgElement::zero(), DEFAULT_SLACK).unwrap(), Equality::Distinct);
}

fn unit(i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(i, j)] = 1.0.into();
    m
}

fn standard(sys: &RelativeGBDS, s: CMatrix) -> ConcreteRep {
    ConcreteRep::new(sys, 2, vec![unit(0, 0), unit(1, 1)], [((E, W), s)].into()).unwrap()
}

#[test]
fn matrix_representations() {
    let s = sys1(None);
    let good = standard(&s, unit(0, 1));
    assert!(validate_representation(&s, &good).unwrap().passed());
    let bad = validate_representation(&s, &standard(&s, unit(1, 0))).unwrap();
    assert!(bad.failures.iter().any(|f| f.relation == "(ii)" && f.residual > 0.5));

    let giut = check_giut(&s, &good).unwrap();
    assert!(giut.nonzero_projections.passed && giut.nonzero_defects.vacuous);
    let toeplitz = sys1(Some(AtomSet::EMPTY));
    let tgiut = check_giut(&toeplitz, &standard(&toeplitz, unit(0, 1))).unwrap();
    assert!(!tgiut.nonzero_defects.passed);
    let dead_p = ConcreteRep::new(&s, 2, vec![CMatrix::zeros(2, 2), unit(1, 1)], [((E, W), unit(0, 1))].into()).unwrap();
    let r = check_giut(&s, &dead_p).unwrap();
    assert!(!r.nonzero_projections.passed);
    assert_eq!(r.nonzero_projections.witness.as_deref(), Some("{v}"));

    let eval = |src: &str| good.evaluate(&s, &parse_element(&s, src).unwrap()).unwrap();
    assert!(frobenius(&eval("p[v] - s[e;w] * s[e;w]^")) < 1e-12);
    assert!(frobenius(&(eval("p[w]") - unit(1, 1))) < 1e-12);
    let ewe = good.evaluate(&s, &el(term(&[E], W, &[E]))).unwrap();
    assert!(frobenius(&(ewe - unit(0, 0))) < 1e-12);
}

fn tilde_atoms(t: &gbds::constructions::TildeResult) -> Vec<String> {
    t.system().atom_labels().unwrap().to_vec()
}

#[test]
fn tilde_of_the_toeplitz_edge() {
    let t = tilde(&sys1(Some(AtomSet::EMPTY))).unwrap();
    assert_eq!(tilde_atoms(&t), ["v", "w", "v'"]);
    let fv = t.system().finite().unwrap();
    assert_eq!(fv.dual(E).images(), &[None, Some(V), None]);
    assert_eq!(fv.regular(), v());
    assert_eq!(fv.relative(), v());
    assert_eq!(fv.ideal(E), t.encode(w(), w()).unwrap());
    assert_eq!(fv.ideal(E), w());

    let calc = Calculus::new(t.original()).unwrap();
    let pv = calc.p(v());
    assert_eq!(t.rho(&t.phi(&pv)).unwrap(), pv);
    let sew = calc.s(&e(), w()).unwrap();
    assert_eq!(t.rho(&t.phi(&sew)).unwrap(), sew);
    let tcalc = Calculus::new(t.system()).unwrap();
    let copy = tcalc.p(t.encode(AtomSet::EMPTY, v()).unwrap());
    let back = t.phi(&t.rho(&copy).unwrap());
    assert_eq!(tcalc.eq_modulo_ck(&back, &copy, 1).unwrap(), Equality::Equal);
    assert!(t.check_round_trips().unwrap().is_empty());
}

#[test]
fn tilde_adds_nothing_when_relative_is_regular() {
    let t = tilde(&sys1(None)).unwrap();
    assert!(t.copies().is_empty());
    assert_eq!(tilde_atoms(&t), ["v", "w"]);
    assert_eq!(t.system().finite().unwrap().dual(E).images(), &[None, Some(V)]);
}

#[test]
fn truncated_grid_graph() {
    let cols = 1..=3;
    let vertices: Vec<String> = cols.clone().flat_map(|i| [format!("({i},1)"), format!("({i},2)")]).collect();
    let edges = cols
        .map(|i| Edge {
            src: format!("({i},1)"),
            dst: format!("({i},2)"),
            label: "a".into(),
        })
        .collect();
    let g = import_labelled_graph(&LabelledGraph { vertices, edges }).unwrap();
    let alg = g.base().algebra().as_finite().unwrap().clone();
    let idx = |s: &str| alg.atom_index(s).unwrap();
    let dual = g.base().action(0).as_dual().unwrap();
    for i in 1..=3 {
        assert_eq!(dual.image(idx(&format!("({i},2)"))), Some(idx(&format!("({i},1)"))));
        assert_eq!(dual.image(idx(&format!("({i},1)"))), None);
    }
    let second: AtomSet = (1..=3).map(|i| idx(&format!("({i},2)"))).collect();
    assert_eq!(g.ideal(0).generator_atoms(), Some(second));
}

#[test]
fn shared_target_is_not_weakly_left_resolving() {
    let edge = |s: &str| Edge {
        src: s.into(),
        dst: "w".into(),
        label: "a".into(),
    };
    let g = LabelledGraph {
        vertices: vec!["u".into(), "u2".into(), "w".into()],
        edges: vec![edge("u"), edge("u2")],
    };
    assert!(matches!(import_labelled_graph(&g), Err(Error::NotWeaklyLeftResolving { .. })));
}

#[test]
fn one_edge_graph_is_the_edge_system() {
    let g = import_labelled_graph(&LabelledGraph::directed(&["v", "w"], &[("v", "w")])).unwrap();
    let s = RelativeGBDS::with_regular(g).unwrap();
    let fv = s.finite().unwrap();
    assert_eq!(s.labels(), ["e"]);
    assert_eq!(fv.dual(E).images(), &[None, Some(V)]);
    assert_eq!(fv.ideal(E), w());
    assert_eq!(admissible_pairs(&s, DEFAULT_MAX_ATOMS).unwrap().len(), 2);
}

#[test]
fn finite_cofinite_system() {
    let ex = remark_example().unwrap();
    assert_eq!(ex.witness_membership().unwrap(), (true, false));
    let alg = ex.range_system.algebra().clone();
    let pair = |a: &[u64], b: FinCofin| {
        Element::new(alg.clone(), Value::Pair(Box::new(Value::Finite(a.iter().copied().collect())), Box::new(Value::FinCofin(b))))
            .unwrap()
    };
    let theta = ex.range_system.bds().action(0);
    assert!(theta
        .apply(&pair(&[1, 2], FinCofin::cofinite([3])))
        .unwrap()
        .equals(&pair(&[], FinCofin::finite([1, 2])))
        .unwrap());
    let reg = ex.range_system.bds().regular_ideal().unwrap();
    assert!(reg.contains(&pair(&[4, 7], FinCofin::finite([]))).unwrap());
    assert!(!reg.contains(&pair(&[4], FinCofin::finite([1]))).unwrap());
    assert!(!reg.contains(&pair(&[], FinCofin::cofinite([]))).unwrap());
    let range = ex.range_system.bds().range_ideal(0).unwrap();
    assert!(range.contains(&pair(&[], FinCofin::finite([1, 9]))).unwrap());
    assert!(!range.contains(&pair(&[], FinCofin::cofinite([1]))).unwrap());
}

#[test]
fn rational_coefficients_survive_products() {
    let s = sys1(None);
    let calc = Calculus::new(&s).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    let x = calc.s(&e(), w()).unwrap().scale(&half);
    let y = calc.mul(&x.adjoint(), &x).unwrap();
    assert_eq!(y, calc.p(w()).scale(&(&half * &half)));
}
