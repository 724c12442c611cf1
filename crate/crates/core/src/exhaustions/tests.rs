use super::format::{parse_descriptor, parse_profile, parse_rational, AlgebraInput};
use super::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn periodic(alg: AlgType, n0: u64, period: &[(u64, u64, u64)]) -> ExhaustionDescriptor {
    ExhaustionDescriptor::new(
        alg,
        n0,
        vec![],
        TailGenerator::Periodic(period.iter().map(|&(l, r, z)| SignatureTriple::new(l, r, z)).collect()),
    )
    .unwrap()
}

fn precision() -> BigRational {
    rat(1, 1 << 40)
}

#[test]
fn pure_doubling_levels() {
    let d = periodic(AlgType::A, 2, &[(2, 0, 0)]);
    let lv = d.derive_level(3);
    assert_eq!(lv.n, BigUint::from(16u32));
    assert_eq!(lv.delta, rat(1, 1));
    assert_eq!(lv.sigma, rat(1, 1));
}

#[test]
fn affine_recurrence_closed_form() {
    let d = periodic(AlgType::A, 2, &[(2, 0, 1)]);
    for (i, lv) in d.levels().take(30).enumerate() {
        let pow = BigInt::from(2).pow(i as u32);
        let n = BigInt::from(3) * &pow - 1;
        assert_eq!(BigInt::from(lv.n.clone()), n);
        assert_eq!(lv.delta(), BigRational::new(pow * 2, n));
    }
}

#[test]
fn proportional_levels() {
    let d = ExhaustionDescriptor::new(
        AlgType::A,
        2,
        vec![],
        TailGenerator::Proportional { l: 2, r: 0, beta: 1 },
    )
    .unwrap();
    let lv = d.derive_level(2);
    assert_eq!(lv.n, BigUint::from(18u32));
    assert_eq!(lv.s, 2);
    assert_eq!(lv.delta, rat(4, 9));
    assert_eq!(d.stz_s().to_string(), "2^inf");
    assert_eq!(d.classify_density(&precision()), (DensityClass::Sparse, Real::zero()));
}

#[test]
fn steinitz_of_exhaustions() {
    assert_eq!(periodic(AlgType::A, 2, &[(2, 0, 0)]).stz_s().to_string(), "2^inf");
    let primes = ExhaustionDescriptor::new(AlgType::A, 2, vec![], TailGenerator::PrimeSeq { offset: 1 }).unwrap();
    assert_eq!(primes.stz_s().to_string(), "2^2 default 1");
    let shifted = ExhaustionDescriptor::new(AlgType::A, 3, vec![], TailGenerator::PrimeSeq { offset: 3 }).unwrap();
    // 3 · 5 · 7 · 11 ⋯
    assert_eq!(shifted.stz_s().to_string(), "2^0 default 1");
    let mixed = periodic(AlgType::A, 6, &[(3, 0, 2), (5, 0, 0)]);
    assert_eq!(mixed.stz_s().to_string(), "2*3^inf*5^inf");
}

#[test]
fn steinitz_c_after_last_symmetric_level() {
    let d = ExhaustionDescriptor::new(
        AlgType::A,
        2,
        vec![SignatureTriple::new(1, 1, 1), SignatureTriple::new(3, 0, 0)],
        TailGenerator::Periodic(vec![SignatureTriple::new(2, 1, 0)]),
    )
    .unwrap();
    // n_1 = 5, c_1 = 3, tail c = 1
    assert_eq!(d.stz_c().unwrap().to_string(), "3*5");
    assert_eq!(periodic(AlgType::A, 2, &[(1, 1, 0)]).stz_c(), None);
    assert_eq!(periodic(AlgType::C, 2, &[(2, 0, 0)]).stz_c(), None);
}

#[test]
fn density_classes() {
    let p = precision();
    let pure = periodic(AlgType::A, 2, &[(2, 0, 0)]);
    assert_eq!(pure.classify_density(&p), (DensityClass::Pure, Real::one()));

    let dense = periodic(AlgType::A, 2, &[(2, 0, 1)]);
    let (class, delta) = dense.classify_density(&p);
    assert_eq!(class, DensityClass::Dense);
    let iv = delta.enclosure();
    assert!(iv.contains(&rat(2, 3)));
    assert!(iv.width() <= p);

    let finitary = periodic(AlgType::A, 2, &[(1, 0, 1)]);
    assert_eq!(finitary.classify_density(&p).0, DensityClass::Sparse);
}

#[test]
fn pure_delta_is_taken_at_tail_start() {
    let d = ExhaustionDescriptor::new(
        AlgType::A,
        3,
        vec![SignatureTriple::new(2, 0, 1), SignatureTriple::new(3, 1, 2)],
        TailGenerator::Periodic(vec![SignatureTriple::new(2, 0, 0), SignatureTriple::new(3, 0, 0)]),
    )
    .unwrap();
    let (class, delta) = d.classify_density(&precision());
    assert_eq!(class, DensityClass::Pure);
    let at_start = d.derive_level(2).delta;
    assert_eq!(delta, Real::Exact(at_start.clone()));
    for lv in d.levels().skip(2).take(10) {
        assert_eq!(lv.delta(), at_start);
    }
}

#[test]
fn enclosures_tighten_and_contain_later_deltas() {
    let d = periodic(AlgType::A, 4, &[(3, 0, 2), (5, 0, 0)]);
    let encl: Vec<RationalInterval> = d.delta_enclosures().unwrap().take(12).collect();
    for w in encl.windows(2) {
        assert!(w[1].width() <= w[0].width());
    }
    // every later partial δ_i lies above the final lower bound
    let last = encl.last().unwrap();
    for lv in d.levels().take(40) {
        assert!(lv.delta() >= *last.lo());
    }
}

#[test]
fn symmetry_classes() {
    assert_eq!(
        periodic(AlgType::A, 2, &[(3, 0, 2)]).classify_symmetry(),
        (SymmetryClass::OneSided, Real::one())
    );
    assert_eq!(
        periodic(AlgType::A, 2, &[(1, 1, 0)]).classify_symmetry().0,
        SymmetryClass::TwoSidedSymmetric
    );
    assert_eq!(
        periodic(AlgType::A, 2, &[(2, 1, 0)]).classify_symmetry(),
        (SymmetryClass::WeaklyNonSymmetric, Real::zero())
    );
    assert_eq!(
        periodic(AlgType::O, 3, &[(2, 0, 1)]).classify_symmetry().0,
        SymmetryClass::OneSided
    );
}

#[test]
fn profiles() {
    let sl2 = periodic(AlgType::A, 2, &[(2, 0, 0)]).profile(&precision());
    assert_eq!(sl2.s.to_string(), "2^inf");
    assert_eq!(sl2.density, DensityClass::Pure);
    assert_eq!(sl2.symmetry, SymmetryClass::OneSided);
    assert_eq!(sl2.delta, Real::one());
    assert_eq!(sl2.sigma, Real::one());
    assert!(!sl2.finitary);

    let finitary = periodic(AlgType::A, 2, &[(1, 0, 1)]).profile(&precision());
    assert!(finitary.finitary);
    assert_eq!(finitary.s.to_string(), "2");

    let mut broken = sl2.clone();
    broken.density = DensityClass::Sparse;
    broken.delta = Real::Exact(rat(1, 2));
    assert!(matches!(certify(broken), Err(ExhaustionError::InconsistentProfile(_))));
}

#[test]
fn descriptor_validation() {
    let bad = |alg, n0, period: Vec<SignatureTriple>| ExhaustionDescriptor::new(alg, n0, vec![], TailGenerator::Periodic(period));
    assert!(bad(AlgType::A, 1, vec![SignatureTriple::new(2, 0, 0)]).is_err());
    assert!(bad(AlgType::C, 3, vec![SignatureTriple::new(2, 0, 0)]).is_err());
    assert!(bad(AlgType::C, 2, vec![SignatureTriple::new(2, 0, 1)]).is_err());
    assert!(bad(AlgType::O, 2, vec![SignatureTriple::new(2, 1, 0)]).is_err());
    assert!(bad(AlgType::A, 2, vec![SignatureTriple::new(1, 2, 0)]).is_err());
    assert!(bad(AlgType::A, 2, vec![SignatureTriple::new(1, 0, 0)]).is_err());
    assert!(bad(AlgType::A, 2, vec![]).is_err());
}

#[test]
fn descriptor_text_round_trip() {
    let src = "# example\ntype: A\nn0: 2\nprefix: (2,1,3) (4,0,0)\ntail: periodic (3,0,2) (5,0,0)   # tail\n";
    let d = parse_descriptor(src).unwrap();
    assert_eq!(d.prefix().len(), 2);
    assert_eq!(parse_descriptor(&d.to_string()).unwrap(), d);
    for tail in ["primes offset 1", "proportional (2,0,1)"] {
        let d = parse_descriptor(&format!("type: A\nn0: 2\ntail: {tail}\n")).unwrap();
        assert_eq!(parse_descriptor(&d.to_string()).unwrap(), d);
    }
}

#[test]
fn descriptor_parse_errors_are_located() {
    let err = parse_descriptor("type: A\nn0: 2\ntail: periodic (3,0;2)\n").unwrap_err();
    assert_eq!((err.line, err.column), (3, 20));
    let err = parse_descriptor("type: B\nn0: 2\ntail: periodic (2,0,0)\n").unwrap_err();
    assert_eq!(err.line, 1);
    let err = parse_descriptor("type: C\nn0: 3\ntail: periodic (2,0,0)\n").unwrap_err();
    assert_eq!(err.line, 2);
    let err = parse_descriptor("type: A\nn0: 2\nbogus: 1\n").unwrap_err();
    assert_eq!((err.line, err.column), (3, 1));
}

#[test]
fn profile_text_round_trip() {
    let dense = periodic(AlgType::A, 2, &[(2, 0, 1)]).profile(&precision());
    let mut parsed = parse_profile(&dense.to_string()).unwrap();
    parsed.descriptor = dense.descriptor.clone();
    assert_eq!(parsed, dense);
    let src = "type: A\nS: 2^inf\nC: 3^inf\ndensity: pure\nsymmetry: strongly-non-symmetric\ndelta: 1/2\nsigma: 1/3\n";
    let p = parse_profile(src).unwrap();
    assert_eq!(p.symmetry, SymmetryClass::StronglyNonSymmetric);
    assert!(parse_profile("type: A\nS: 2^inf\nC: none\ndensity: sparse\nsymmetry: one-sided\ndelta: 1/2\n").is_err());
    assert!(matches!(AlgebraInput::parse(src).unwrap(), AlgebraInput::Profile(_)));
}

#[test]
fn rational_literals() {
    assert_eq!(parse_rational("2^-40").unwrap(), rat(1, 1 << 40));
    assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
    assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
    assert!(parse_rational("1/0").is_err());
}

#[test]
fn compose_examples() {
    let first = DiagonalMap::new(2, 1, BigUint::zero(), BigUint::from(2u32));
    let second = DiagonalMap::new(3, 1, BigUint::from(3u32), BigUint::from(6u32));
    let c = compose_signature(&first, &second).unwrap();
    assert_eq!((c.l, c.r), (7, 5));
    assert_eq!(c.z, BigUint::from(27u32 - 24));

    let sig = DiagonalMap::new(3, 2, BigUint::from(4u32), BigUint::from(5u32));
    let id = DiagonalMap::new(1, 0, BigUint::zero(), BigUint::from(5u32));
    assert_eq!(compose_signature(&id, &sig).unwrap(), sig);

    let a = DiagonalMap::new(3, 0, BigUint::zero(), BigUint::from(2u32));
    let b = DiagonalMap::new(4, 0, BigUint::zero(), BigUint::from(6u32));
    let ab = compose_signature(&a, &b).unwrap();
    assert_eq!((ab.l, ab.r, ab.z.clone()), (12, 0, BigUint::zero()));

    let wrong = DiagonalMap::new(2, 0, BigUint::zero(), BigUint::from(7u32));
    assert!(matches!(
        compose_signature(&a, &wrong),
        Err(ExhaustionError::DimensionMismatch(_))
    ));
}

/// Weight-matrix model of a diagonal map: row k is the image of the k-th
/// basis weight of the target natural module in the source weight space.
fn weight_matrix(l: u64, r: u64, z: u64, n: usize) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    for _ in 0..l {
        for j in 0..n {
            rows.push((0..n).map(|t| i64::from(t == j)).collect());
        }
    }
    for _ in 0..r {
        for j in 0..n {
            rows.push((0..n).map(|t| -i64::from(t == j)).collect());
        }
    }
    for _ in 0..z {
        rows.push(vec![0; n]);
    }
    rows
}

fn count_signature(m: &[Vec<i64>]) -> (u64, u64, u64) {
    let n = m[0].len();
    let unit = |row: &Vec<i64>, sign: i64| row.iter().filter(|&&x| x != 0).count() == 1 && row.contains(&sign);
    let l = m.iter().filter(|row| unit(row, 1)).count() as u64 / n as u64;
    let r = m.iter().filter(|row| unit(row, -1)).count() as u64 / n as u64;
    let z = m.iter().filter(|row| row.iter().all(|&x| x == 0)).count() as u64;
    (l, r, z)
}

fn triple_strategy() -> impl Strategy<Value = SignatureTriple> {
    (1u64..4, 0u64..3, 0u64..4).prop_filter_map("l >= r", |(l, r, z)| {
        (l >= r && (l + r >= 2 || z >= 1)).then_some(SignatureTriple::new(l, r, z))
    })
}

fn descriptor_strategy() -> impl Strategy<Value = ExhaustionDescriptor> {
    (
        2u64..6,
        proptest::collection::vec(triple_strategy(), 0..3),
        prop_oneof![
            proptest::collection::vec(triple_strategy(), 1..3).prop_map(TailGenerator::Periodic),
            (1u64..4).prop_map(|offset| TailGenerator::PrimeSeq { offset }),
            (1u64..3, 0u64..2, 0u64..2).prop_filter_map("valid", |(l, r, beta)| {
                (l >= r && l + r + beta >= 2).then_some(TailGenerator::Proportional { l, r, beta })
            }),
        ],
    )
        .prop_map(|(n0, prefix, tail)| ExhaustionDescriptor::new(AlgType::A, n0, prefix, tail).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn delta_and_sigma_non_increasing(d in descriptor_strategy()) {
        let levels: Vec<Level> = d.levels().take(21).collect();
        for w in levels.windows(2) {
            prop_assert!(w[1].delta() <= w[0].delta());
            prop_assert!(w[1].sigma() <= w[0].sigma());
            prop_assert!(w[1].n > w[0].n);
        }
    }

    #[test]
    fn profile_is_consistent(d in descriptor_strategy()) {
        let p = d.profile(&rat(1, 1 << 20));
        prop_assert_eq!(p.finitary, d.stz_s().is_finite());
        if let Real::Exact(delta) = &p.delta {
            if p.density == DensityClass::Pure {
                let later = d.level(d.tail_start() + 5).delta();
                prop_assert_eq!(&later, delta);
            }
        }
    }

    #[test]
    fn composition_matches_weight_matrices(
        n1 in 1usize..3, a in triple_strategy(), b in triple_strategy(), c in triple_strategy(),
    ) {
        let n2 = a.s() as usize * n1 + a.z as usize;
        let m1 = weight_matrix(a.l, a.r, a.z, n1);
        let m2 = weight_matrix(b.l, b.r, b.z, n2);
        let product: Vec<Vec<i64>> = m2
            .iter()
            .map(|row| (0..n1).map(|j| row.iter().zip(&m1).map(|(x, r1)| x * r1[j]).sum()).collect())
            .collect();
        let first = DiagonalMap::new(a.l, a.r, a.z.into(), n1.into());
        let second = DiagonalMap::new(b.l, b.r, b.z.into(), n2.into());
        let composed = compose_signature(&first, &second).unwrap();
        prop_assert_eq!(count_signature(&product), (composed.l, composed.r, u64::try_from(composed.z.clone()).unwrap()));

        // associativity
        let n3 = second.target_dim.clone();
        let third = DiagonalMap::new(c.l, c.r, c.z.into(), n3);
        let left = compose_signature(&compose_signature(&first, &second).unwrap(), &third).unwrap();
        let right = compose_signature(&first, &compose_signature(&second, &third).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.l + left.r, a.s() * b.s() * c.s());
    }
}
