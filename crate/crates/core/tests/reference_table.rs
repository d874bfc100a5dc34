mod common;

use common::{parse_reference, reference_poly, reference_rows};
use sjk_core::families::{hermite_closed, sj_closed_mm, sj_umbral};
use sjk_core::opcalc::{exp_resolvent_sj, gp_series, hermite_exp};
use sjk_core::scalar::{int, Rational};

#[test]
fn reference_file_covers_both_families() {
    let rows = reference_rows();
    for family in ["sj", "hermite"] {
        let ns: Vec<u32> = rows
            .iter()
            .filter(|r| r.family == family)
            .map(|r| r.n)
            .collect();
        assert_eq!(ns, (0..=10).collect::<Vec<_>>(), "{family}");
    }
    // every row is monic of the stated degree
    for row in &rows {
        assert_eq!(row.terms[0], (row.n, 1, 1), "{} {}", row.family, row.n);
    }
}

#[test]
fn parser_rejects_malformed_records() {
    assert!(parse_reference("sj 2 (2,1,1) (0,-1)").is_err());
    assert!(parse_reference("sj two (2,1,1)").is_err());
    assert!(parse_reference("sj 2 (2,1,0)").is_err());
    assert!(parse_reference("sj 2 2,1,1").is_err());
    let rows = parse_reference("# comment\n\nhermite 2 (2,1,1) (0,2,1)\n").unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].terms, vec![(2, 1, 1), (0, 2, 1)]);
}

#[test]
fn sj_constructions_match_reference() {
    let m1 = int(-1);
    for n in 0..=10 {
        let expected = reference_poly("sj", n);
        assert_eq!(gp_series(n, &m1, &m1).unwrap(), expected, "resolvent n={n}");
        assert_eq!(exp_resolvent_sj(n).unwrap(), expected, "exponential n={n}");
        assert_eq!(sj_umbral(n).unwrap(), expected, "umbral n={n}");
        assert_eq!(
            sj_closed_mm(n, &Rational::from_integer(0.into())),
            expected,
            "closed n={n}"
        );
    }
}

#[test]
fn hermite_constructions_match_reference() {
    for n in 0..=10 {
        let expected = reference_poly("hermite", n);
        assert_eq!(hermite_closed(n), expected, "closed n={n}");
        assert_eq!(hermite_exp(n), expected, "exponential n={n}");
    }
}

#[test]
fn reference_rows_render() {
    assert_eq!(reference_poly("sj", 4).to_text(), "x^4 - 6/5 x^2 + 1/5");
    assert_eq!(
        reference_poly("hermite", 10).to_text(),
        "x^10 + 90 x^8 z + 2520 x^6 z^2 + 25200 x^4 z^3 + 75600 x^2 z^4 + 30240 z^5"
    );
    assert_eq!(
        reference_poly("sj", 4).to_latex(),
        r"x^{4} - \frac{6 x^{2}}{5} + \frac{1}{5}"
    );
}
