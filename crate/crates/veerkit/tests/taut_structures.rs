use veerkit::taut::{derive_transverse_taut, diagnose, parse_taut_angles, validate_taut};
use veerkit::{decode_isosig, VeeringTriangulation};

const FIXTURES: [&str; 4] = [
    "gLLMQaedfdffjxaxjkn_200211",
    "hLAPzkbcbeefgghhwjsahr_2112212",
    "ovvLALQLQQchgggkijmnllnmnmaaaaaggaaggaaaa_10000111111100",
    "qvvLLMLzQQQkfgfjiloknoplmnoppaaaavvavaaavvaaav_1020212211211200",
];

#[test]
fn fixtures_are_veering() {
    for e in FIXTURES {
        let d = diagnose(e).unwrap();
        assert!(d.taut && d.transverse_taut && d.veering, "{e}: {:?}", d.errors);
        assert_eq!(d.blue.unwrap() + d.red.unwrap(), d.tets);
    }
}

#[test]
fn census_digit_selectors() {
    let t = decode_isosig("gLLMQaedfdffjxaxjkn").unwrap();
    assert_eq!(parse_taut_angles("200211", &t).unwrap().selectors, vec![2, 0, 0, 2, 1, 1]);
    let t = decode_isosig("hLAPzkbcbeefgghhwjsahr").unwrap();
    assert_eq!(parse_taut_angles("2112212", &t).unwrap().selectors, vec![2, 1, 1, 2, 2, 1, 2]);
    assert!(parse_taut_angles("20021", &decode_isosig("gLLMQaedfdffjxaxjkn").unwrap()).is_err());
}

#[test]
fn all_zero_digits_are_not_taut() {
    for e in FIXTURES {
        let (sig, digits) = e.split_once('_').unwrap();
        let t = decode_isosig(sig).unwrap();
        let zeros = "0".repeat(digits.len());
        let r = validate_taut(&t, &parse_taut_angles(&zeros, &t).unwrap());
        assert!(!r.valid, "{e}");
        assert!(!r.violations.is_empty());
    }
}

/// Found by trying all nine digit pairs on this two-tetrahedron
/// triangulation; an independent implementation agrees.
#[test]
fn taut_but_not_transverse_taut() {
    let t = decode_isosig("cPcbbbdxm").unwrap();
    for digits in ["02", "21"] {
        let a = parse_taut_angles(digits, &t).unwrap();
        assert!(validate_taut(&t, &a).valid);
        assert!(derive_transverse_taut(&t, &a).is_err());
    }
    let a = parse_taut_angles("10", &t).unwrap();
    assert!(derive_transverse_taut(&t, &a).is_ok());
}

#[test]
fn every_edge_is_top_once_and_bottom_once() {
    for e in FIXTURES {
        let vt = VeeringTriangulation::from_entry(e).unwrap();
        let mut top = vec![0; vt.tet_count()];
        let mut bottom = vec![0; vt.tet_count()];
        for (t, r) in vt.roles().iter().enumerate() {
            top[vt.edge_class[t][r.top]] += 1;
            bottom[vt.edge_class[t][r.bottom]] += 1;
        }
        assert!(top.iter().all(|&c| c == 1), "{e}");
        assert!(bottom.iter().all(|&c| c == 1), "{e}");
    }
}
