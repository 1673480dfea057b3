use qblocks_core::abengine::{nested_character, nested_character_mform};
use qblocks_core::blocks::BlockLabel;
use qblocks_core::qser::{euler_power, false_theta};
use qblocks_core::rootsys::Weight;
use qblocks_core::sl2closed::{example3_min_exponent, example3_series};
use qblocks_core::zhatref::{match_linear_combination, seifert_to_plumbing, zhat_series, MatchOutcome, SeifertData};
use qblocks_core::{QSeries, Rat};

fn r(a: i64, b: i64) -> Rat {
    Rat::new(a, b)
}

#[test]
fn deep_window_against_closed_form() {
    for (ps, rs_) in [(vec![2, 3], vec![1, 1]), (vec![2, 7], vec![2, 5]), (vec![3, 4], vec![2, 4])] {
        for s in 1..=2 {
            let t = example3_min_exponent(&ps, &rs_, s).unwrap() + r(80, 1);
            let l = BlockLabel::sl2(&ps, &rs_, s).unwrap();
            assert_eq!(nested_character(&l, t).unwrap(), example3_series(&ps, &rs_, s, t).unwrap(), "{ps:?} {rs_:?} {s}");
        }
    }
}

#[test]
fn json_round_trip_of_engine_output() {
    let l = BlockLabel::sl2(&[2, 5], &[1, 3], 2).unwrap();
    let s = nested_character(&l, r(30, 1)).unwrap();
    assert_eq!(QSeries::from_json(&s.to_json()).unwrap(), s);
}

#[test]
fn eta_prefactor_round_trip() {
    let l = BlockLabel::new("A2".parse().unwrap(), vec![2, 3], vec![vec![1, 2], vec![2, 1]], Weight::zero(2)).unwrap();
    let s = nested_character(&l, r(14, 1)).unwrap();
    let e = s.expand_eta();
    assert_eq!(e.eta_power(), 0);
    let back = e.mul(&euler_power::<i64>(2, s.trunc()).shift(r(2, 24))).with_eta_power(-2);
    assert_eq!(back, s);
}

#[test]
fn a2_leading_terms_agree_between_forms() {
    let a2 = "A2".parse::<qblocks_core::rootsys::RootSystem>().unwrap();
    for rows in [vec![vec![1, 1], vec![1, 1]], vec![vec![2, 1], vec![1, 1]], vec![vec![1, 2], vec![3, 1]]] {
        let l = BlockLabel::new(a2.clone(), vec![2, 3], rows.clone(), Weight::zero(2)).unwrap();
        let t = r(30, 1);
        let conv = nested_character(&l, t).unwrap();
        let mult = nested_character_mform(&l, t).unwrap();
        let lead = conv.valuation().expect("nonzero");
        assert_eq!(mult.valuation(), Some(lead));
        assert_eq!(conv.coeff(&lead), mult.coeff(&lead), "{rows:?}");
    }
}

#[test]
fn n1_engine_matches_false_theta() {
    let t = r(40, 1);
    for p in [4, 6, 9] {
        for a in 1..p {
            let l = BlockLabel::sl2(&[p], &[p - a], 1).unwrap();
            let want = false_theta::<i64>(p, a, t).unwrap().with_eta_power(-1);
            assert_eq!(nested_character(&l, t).unwrap(), want);
        }
    }
}

#[test]
fn zhat_of_sigma_237_decomposes() {
    let g = seifert_to_plumbing(&SeifertData::new(vec![2, 3, 7]).unwrap()).unwrap();
    let z = zhat_series(&g, r(100, 1)).unwrap();
    let cands: Vec<QSeries> = (1..42).map(|a| false_theta(42, a, r(120, 1)).unwrap()).collect();
    let MatchOutcome::Match(m) = match_linear_combination(&cands, &z, r(15, 1), r(90, 1)).unwrap() else {
        panic!("no match");
    };
    // Reassemble the target from the declared combination.
    let mut sum = QSeries::zero(z.trunc());
    for (c, f) in m.coeffs.iter().zip(&cands) {
        let c = Rat::from_integer(c.to_integer().try_into().unwrap());
        sum = sum.add(&f.scale(c).unwrap()).unwrap();
    }
    let t = z.valuation().unwrap() + r(90, 1);
    assert_eq!(z.shift(m.shift).truncate(t + m.shift), sum.truncate(t + m.shift));
}
