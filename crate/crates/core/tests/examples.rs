use irred::construct::{
    artin_schreier_irreducible, canonical_qnr, canonical_qth_data, composed_sum, construct_irreducible_ext,
    construct_irreducible_fp, prime_power_irreducible, random_irreducible, trace_sweep_count,
};
use irred::extfield::min_poly_over_prime;
use irred::factorize::{edf, rabin_is_irreducible};
use irred::oracle::{brute_is_irreducible, monic_polys, EnumBudget};
use irred::{ExtField, Field, Fp64, FpBig, Natural, Poly, PrimeField, PrimeModulus, SeededRng};
use rand::SeedableRng;

fn rng(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

fn poly(field: &Fp64, c: &[u64]) -> Poly<Fp64> {
    Poly::new(field, c.to_vec())
}

fn irreducible_set<F: Field>(field: &F, d: usize) -> Vec<Poly<F>> {
    let budget = EnumBudget::default();
    monic_polys(field, d)
        .filter(|f| brute_is_irreducible(f, &budget).unwrap())
        .collect()
}

#[test]
fn qnr_worked_example() {
    for seed in 0..25 {
        let r = canonical_qnr(&Fp64::of(73), &mut rng(seed)).unwrap();
        assert_eq!(r.chain, vec![72, 27, 10]);
        assert_eq!(r.poly.to_text(), "63 0 1");
    }
}

#[test]
fn qnr_agrees_with_pipeline_in_degree_two() {
    for p in [3u64, 5, 7, 13, 17, 41, 73, 97, 101, 257] {
        let f = Fp64::of(p);
        let q = canonical_qnr(&f, &mut rng(p)).unwrap();
        assert_eq!(construct_irreducible_fp(&f, 2, &mut rng(p + 1)).unwrap(), q.poly, "p={p}");
    }
}

#[test]
fn prime_power_examples() {
    let f73 = Fp64::of(73);
    let data = canonical_qth_data(&f73, 2, &mut rng(0)).unwrap();
    assert_eq!(prime_power_irreducible(&data, 1, &mut rng(1)).unwrap().to_text(), "63 0 1");

    let f7 = Fp64::of(7);
    let data = canonical_qth_data(&f7, 3, &mut rng(0)).unwrap();
    assert_eq!(data.h.to_text(), "3 1");
    assert_eq!(data.alpha, vec![4]);
    assert_eq!(prime_power_irreducible(&data, 1, &mut rng(1)).unwrap().to_text(), "3 0 0 1");

    let f5 = Fp64::of(5);
    let quartics = irreducible_set(&f5, 4);
    let mut outputs = Vec::new();
    for seed in 0..25 {
        let data = canonical_qth_data(&f5, 2, &mut rng(seed)).unwrap();
        outputs.push(prime_power_irreducible(&data, 2, &mut rng(seed + 100)).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    assert!(quartics.contains(&outputs[0]));
}

#[test]
fn artin_schreier_examples() {
    let budget = EnumBudget::default();
    for (p, want) in [(2u64, "1 1 1"), (3, "2 2 0 1"), (5, "4 4 0 0 0 1")] {
        let f = artin_schreier_irreducible(&Fp64::of(p), 1).unwrap();
        assert_eq!(f.to_text(), want);
        assert!(brute_is_irreducible(&f, &budget).unwrap());
    }
    for (p, e) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let f = artin_schreier_irreducible(&Fp64::of(p), e).unwrap();
        assert!(brute_is_irreducible(&f, &budget).unwrap(), "p={p} e={e}");
    }
}

#[test]
fn composed_sum_examples() {
    let f7 = Fp64::of(7);
    assert_eq!(composed_sum(&poly(&f7, &[4, 1]), &poly(&f7, &[5, 1])).unwrap().to_text(), "2 1");

    let f3 = Fp64::of(3);
    let f = poly(&f3, &[1, 0, 1]);
    let g = poly(&f3, &[2, 2, 0, 1]);
    let h = composed_sum(&f, &g).unwrap();
    assert_eq!(h.degree(), Some(6));
    assert!(rabin_is_irreducible(&h).unwrap());
    assert!(brute_is_irreducible(&h, &EnumBudget::default()).unwrap());
    assert_eq!(composed_sum(&g, &f).unwrap(), h);

    // g = X: beta = 0 leaves f unchanged
    let cubic = poly(&f3, &[2, 2, 0, 1]);
    assert_eq!(composed_sum(&cubic, &Poly::x(&f3)).unwrap(), cubic);
}

#[test]
fn composed_sum_is_a_minimal_polynomial() {
    let f5 = Fp64::of(5);
    let f = poly(&f5, &[2, 0, 1]);
    let g = artin_schreier_irreducible(&f5, 1).unwrap();
    let h = composed_sum(&f, &g).unwrap();

    let a = ExtField::new(f.clone()).unwrap();
    let tower = ExtField::new(g.map(&a, |c| a.embed(c))).unwrap();
    let sum = tower.add(&tower.lift(&a.generator()), &tower.generator());
    assert_eq!(min_poly_over_prime(&tower, &sum, 10).unwrap(), h);
}

#[test]
fn degree_six_over_f2() {
    let f2 = Fp64::of(2);
    let sextics = irreducible_set(&f2, 6);
    assert_eq!(sextics.len(), 9);
    let first = construct_irreducible_fp(&f2, 6, &mut rng(0)).unwrap();
    assert!(sextics.contains(&first));
    for seed in 1..25 {
        assert_eq!(construct_irreducible_fp(&f2, 6, &mut rng(seed)).unwrap(), first);
    }
}

#[test]
fn extension_examples() {
    let f2 = Fp64::of(2);
    let f4 = ExtField::new(poly(&f2, &[1, 1, 1])).unwrap();
    let lin = construct_irreducible_ext(&f4, 1, &mut rng(0)).unwrap();
    assert_eq!(lin.to_text(), "[0 1] [1 0]");

    let cubics = irreducible_set(&f4, 3);
    assert_eq!(cubics.len(), 20);
    let first = construct_irreducible_ext(&f4, 3, &mut rng(0)).unwrap();
    assert!(cubics.contains(&first));
    for seed in 1..25 {
        assert_eq!(construct_irreducible_ext(&f4, 3, &mut rng(seed)).unwrap(), first);
    }

    // the lifted degree-6 polynomial really splits into k = 2 cubics
    let big = construct_irreducible_fp(&f2, 6, &mut rng(0)).unwrap();
    let lifted = big.map(&f4, |c| f4.embed(c));
    assert_eq!(edf(&lifted, 3, &mut rng(1)).unwrap().len(), 2);
}

#[test]
fn random_baseline_examples() {
    let f2 = Fp64::of(2);
    for seed in 0..20 {
        let (f, attempts) = random_irreducible(&f2, 2, &mut rng(seed)).unwrap();
        assert_eq!(f.to_text(), "1 1 1");
        assert!(attempts >= 1);
    }
}

#[test]
fn big_characteristic() {
    // 2^89 - 1 does not fit the word-sized backend
    let p = PrimeModulus::new((Natural::from(1u32) << 89u32) - 1u32).unwrap();
    let field = FpBig::new(p);
    for d in [2usize, 3, 4, 5, 6] {
        let first = construct_irreducible_fp(&field, d, &mut rng(0)).unwrap();
        assert_eq!(first.degree(), Some(d));
        assert!(rabin_is_irreducible(&first).unwrap());
        for seed in 1..5 {
            assert_eq!(construct_irreducible_fp(&field, d, &mut rng(seed)).unwrap(), first, "d={d}");
        }
    }
}

#[test]
fn backends_agree_on_outputs() {
    let p = 1_000_003u64;
    let small = Fp64::of(p);
    let big = FpBig::new(PrimeModulus::from_u64(p).unwrap());
    for d in [2usize, 3, 4, 6] {
        let a = construct_irreducible_fp(&small, d, &mut rng(1)).unwrap();
        let b = construct_irreducible_fp(&big, d, &mut rng(2)).unwrap();
        assert_eq!(a.to_text(), b.to_text(), "d={d}");
    }
    assert_eq!(small.modulus(), big.modulus());
}

#[test]
fn trace_sweep_not_triggered_on_small_grid() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for d in 2..=12 {
            construct_irreducible_fp(&Fp64::of(p), d, &mut rng(0)).unwrap();
        }
    }
    assert_eq!(trace_sweep_count(), 0);
}
