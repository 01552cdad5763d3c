use modelbench::complexes::random;
use modelbench::complexes::*;
use modelbench::linalg::Matrix;
use modelbench::Q;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn m(rows: usize, cols: usize, data: &[i64]) -> Matrix<Q> {
    Matrix::from_rows(rows, cols, data.iter().map(|&x| q(x)).collect())
}

/// `𝕂t ⊕ 𝕂dt` with `t` in degree 0.
fn contractible() -> Complex<Q> {
    Complex::new(0, vec![1, 1], vec![m(1, 1, &[1])]).unwrap()
}

#[test]
fn cohomology_examples() {
    let v = contractible();
    assert!(v.is_acyclic_on(-2, 3));
    let z = Complex::<Q>::zero(-2, 2);
    assert!((-3..=3).all(|n| z.cohomology(n).dim == 0));
    let s = Complex::<Q>::stalk(0, 1);
    assert_eq!(s.cohomology(0).dim, 1);
    assert_eq!(s.cohomology(1).dim, 0);
    let h = Complex::new(-1, vec![2, 3, 1], vec![m(3, 2, &[1, 0, 0, 1, 0, 0]), m(1, 3, &[0, 0, 1])]).unwrap();
    let c = h.cohomology(0);
    assert_eq!((c.cycles, c.boundaries, c.dim), (2, 2, 0));
}

#[test]
fn bad_differential_is_rejected() {
    let r = Complex::new(0, vec![1, 1, 1], vec![m(1, 1, &[1]), m(1, 1, &[1])]);
    assert_eq!(r.unwrap_err(), ComplexError::SquareNonzero { degree: 0 });
}

#[test]
fn suspension_examples() {
    let s = Complex::<Q>::stalk(0, 1).suspension();
    assert_eq!((s.lo, s.hi, s.dim(-1)), (-1, -1, 1));
    let v = contractible();
    let vv = v.suspension().suspension();
    assert_eq!(vv.diff(-2), v.diff(0));
    assert_eq!(v.suspension().diff(-1), m(1, 1, &[-1]));
    assert!(v.suspension().is_acyclic_on(-3, 3));
}

#[test]
fn cone_examples() {
    let v = contractible();
    let c = cone(&v.identity());
    assert!(c.complex.is_acyclic_on(c.complex.lo, c.complex.hi));
    let x = Complex::new(0, vec![2, 1], vec![m(1, 2, &[1, 1])]).unwrap();
    let zero = ChainMap::zero(x.clone(), Complex::zero(0, 1));
    let c = cone(&zero).complex;
    let sx = x.suspension();
    for n in -1..=1 {
        assert_eq!(c.dim(n), sx.dim(n));
        assert_eq!(c.diff(n), sx.diff(n));
    }
    let p = ChainMap::new(v.clone(), Complex::zero(0, 1), 0, vec![]).unwrap();
    assert!(is_quasi_iso(&p));
    let c = cone(&p).complex;
    assert!(c.is_acyclic_on(c.lo + 1, c.hi - 1));
}

#[test]
fn quasi_isomorphism_examples() {
    let v = contractible();
    assert!(is_quasi_iso(&v.identity()));
    let to_zero = ChainMap::new(v.clone(), Complex::zero(0, 1), 0, vec![]).unwrap();
    assert!(to_zero.is_surjective() && is_quasi_iso(&to_zero));
    let stalk = Complex::<Q>::stalk(0, 1).widen(0, 1);
    let inc = ChainMap::new(stalk, v.clone(), 0, vec![m(1, 1, &[1]), m(1, 0, &[])]);
    assert!(inc.is_err());
    let stalk1 = Complex::<Q>::stalk(1, 1).widen(0, 1);
    let inc = ChainMap::new(stalk1, v, 0, vec![m(1, 0, &[]), m(1, 1, &[1])]).unwrap();
    assert!(!is_quasi_iso(&inc));
}

#[test]
fn criteria_examples() {
    let v = contractible().padded();
    let c = surj_quas_criteria(&v.identity(), v.lo + 1, v.hi - 1);
    assert!(c.c1 && c.c2 && c.c3);
    let to_zero = ChainMap::new(v.clone(), Complex::zero(v.lo, v.hi), v.lo, vec![]).unwrap();
    let c = surj_quas_criteria(&to_zero, v.lo + 1, v.hi - 1);
    assert!(c.c1 && c.c2 && c.c3);
    let stalk = Complex::<Q>::stalk(1, 1).widen(-1, 2);
    let inc = ChainMap::new(stalk, v.clone(), -1, vec![m(0, 0, &[]), m(1, 0, &[]), m(1, 1, &[1]), m(0, 0, &[])]).unwrap();
    let c = surj_quas_criteria(&inc, v.lo + 1, v.hi - 1);
    assert!(!c.c1 && !c.c2 && !c.c3 && c.c3_failure.is_some());
}

#[test]
fn section_examples() {
    let v = contractible();
    let id = v.identity();
    let y = vec![q(3)];
    let x = v.diff(0).mul_vec(&y);
    assert_eq!(solve_section(&id, 0, &x, &y).unwrap(), y);
    let to_zero = ChainMap::new(v.clone(), Complex::zero(0, 1), 0, vec![]).unwrap();
    assert_eq!(solve_section(&to_zero, 0, &[q(2)], &[]).unwrap(), vec![q(2)]);
    let s = Complex::<Q>::stalk(0, 1);
    let f = ChainMap::new(s.clone(), s.clone(), 0, vec![m(1, 1, &[0])]).unwrap();
    let cert = solve_section(&f, 0, &[], &[q(1)]).unwrap_err();
    assert_eq!(cert, vec![q(1)]);
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn random_maps_hit_both_answers() {
    let mut r = rng(7);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..60 {
        let f = random::chain_map::<Q, _>(&mut r, -3, 3, 4);
        let c = surj_quas_criteria(&f, -3, 3);
        assert!(c.agree());
        if c.c1 {
            yes += 1
        } else {
            no += 1
        }
    }
    assert!(yes > 5 && no > 5, "{yes} {no}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn criteria_agree(seed in any::<u64>()) {
        let f = random::chain_map::<Q, _>(&mut rng(seed), -3, 3, 4);
        let c = surj_quas_criteria(&f, -3, 3);
        prop_assert!(c.agree(), "{:?}", c);
    }

    #[test]
    fn cone_fits_the_long_exact_sequence(seed in any::<u64>()) {
        let f = random::chain_map::<Q, _>(&mut rng(seed), -3, 3, 4);
        let c = cone(&f).complex;
        for n in -4..=3 {
            let r = f.cohomology_rank(n);
            let coker = f.target.cohomology(n).dim - r;
            let r1 = f.cohomology_rank(n + 1);
            let ker = f.source.cohomology(n + 1).dim - r1;
            prop_assert_eq!(c.cohomology(n).dim, coker + ker);
        }
    }

    #[test]
    fn suspension_map_anticommutes(seed in any::<u64>()) {
        let x = random::complex::<Q, _>(&mut rng(seed), -3, 3, 4);
        let sx = x.suspension();
        let xi = x.suspension_map();
        for n in -3..=3 {
            let lhs = xi.at(n + 1, x.dim(n + 1), x.dim(n + 1)).mul(&x.diff(n));
            let rhs = sx.diff(n - 1).mul(&xi.at(n, x.dim(n), x.dim(n))).neg();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cone_squares_to_zero(seed in any::<u64>()) {
        let f = random::chain_map::<Q, _>(&mut rng(seed), -2, 2, 3);
        let c = cone(&f);
        let k = &c.complex;
        prop_assert!(Complex::new(k.lo, k.dims().to_vec(), (k.lo..k.hi).map(|n| k.diff(n)).collect()).is_ok());
        prop_assert!(ChainMap::new(c.inclusion.source.clone(), k.clone(), k.lo, (k.lo..=k.hi).map(|n| c.inclusion.at(n)).collect()).is_ok());
    }

    #[test]
    fn float_and_exact_ranks_agree(seed in any::<u64>()) {
        let x = random::complex::<Q, _>(&mut rng(seed), -2, 2, 4);
        let xf = random::complex::<f64, _>(&mut rng(seed), -2, 2, 4);
        for n in -2..=2 {
            prop_assert_eq!(x.cohomology(n).dim, xf.cohomology(n).dim);
        }
    }
}
