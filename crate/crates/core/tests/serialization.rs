mod common;

use common::poly_up_to;
use polyiter::construction::{build_family, verify_all, IterationStrategy};
use polyiter::serial::{
    construction_field, construction_from_json, construction_json_string, parse_poly,
    poly_json_string,
};
use polyiter::{FieldDescriptor, Fp, PrimeField, Rational, Rationals};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn polynomials_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f7 = PrimeField::new(7).unwrap();
    for _ in 0..50 {
        let p = poly_up_to::<Rational, _>(&Rationals, 6, &mut rng);
        assert_eq!(
            parse_poly::<Rational>(&Rationals, &poly_json_string(&p)).unwrap(),
            p
        );
        let p = poly_up_to::<Fp, _>(&f7, 6, &mut rng);
        assert_eq!(parse_poly::<Fp>(&f7, &poly_json_string(&p)).unwrap(), p);
    }
}

#[test]
fn reparsed_constructions_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for r in 1..=3 {
        let q = poly_up_to::<Rational, _>(&Rationals, 2, &mut rng);
        let data = build_family(&q, r, None, None).unwrap();
        let text = construction_json_string(&data);
        assert_eq!(
            construction_field(&text).unwrap(),
            FieldDescriptor::Rationals
        );
        let back = construction_from_json::<Rational>(&Rationals, &text).unwrap();
        let (key, lemmas) = verify_all(&back, IterationStrategy::Auto, false).unwrap();
        assert!(key.passed && lemmas.passed);
    }
}

#[test]
fn literal_parsing_reduces_over_prime_fields() {
    let f5 = PrimeField::new(5).unwrap();
    let p = parse_poly::<Fp>(&f5, r#"{"coeffs": ["1/2", "-1", "7"]}"#).unwrap();
    assert_eq!(p.coeffs(), &[f5.element(3), f5.element(4), f5.element(2)]);
    assert!(parse_poly::<Fp>(&f5, r#"{"coeffs": ["1/5"]}"#).is_err());
    assert!(parse_poly::<Rational>(&Rationals, r#"{"coeffs": [1]}"#).is_err());
}
