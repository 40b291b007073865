use veerkit::branched::{branch_report, ladderpole_counts, verify_vbs_axioms};
use veerkit::taut::TautStructure;
use veerkit::{double_cover, z2_cohomology_basis, VeeringTriangulation};

const ACCEPTED_266: &str = "ovvLALQLQQchgggkijmnllnmnmaaaaaggaaggaaaa_10000111111100";
const ACCEPTED_2244: &str = "qvvLLMLzQQQkfgfjiloknoplmnoppaaaavvavaaavvaaav_1020212211211200";
const KNOTS: [&str; 3] = [
    "gLLMQaedfdffjxaxjkn_200211",
    "hLAPzkbcbeefgghhwjsahr_2112212",
    "dLQacccjsnk_200",
];

fn lift(vt: &VeeringTriangulation, labels: &[u8]) -> VeeringTriangulation {
    let cover = double_cover(&vt.tri, labels).unwrap();
    let selectors = vt.taut.selectors.iter().flat_map(|&s| [s, s]).collect();
    VeeringTriangulation::new(cover, TautStructure { selectors }).unwrap()
}

#[test]
fn accepted_quotients_have_one_cusp_circle_per_end() {
    for e in [ACCEPTED_266, ACCEPTED_2244] {
        let vt = VeeringTriangulation::from_entry(e).unwrap();
        let r = ladderpole_counts(&vt).unwrap();
        assert!(r.each_end_has(1), "{e}: {:?}", r.ladderpoles);
    }
}

#[test]
fn knot_double_covers_have_two_cusp_circles_per_end() {
    for e in KNOTS {
        let vt = VeeringTriangulation::from_entry(e).unwrap();
        let basis = z2_cohomology_basis(&vt.tri);
        assert_eq!(basis.len(), 1, "{e}");
        let up = lift(&vt, &basis[0]);
        assert_eq!(up.cusp_count(), 1, "{e}");
        assert!(verify_vbs_axioms(&up).passed);
        let r = ladderpole_counts(&up).unwrap();
        assert!(r.each_end_has(2), "{e}: {:?}", r.ladderpoles);
    }
}

#[test]
fn report_serialises() {
    let vt = VeeringTriangulation::from_entry(KNOTS[0]).unwrap();
    let v = serde_json::to_value(branch_report(&vt).unwrap()).unwrap();
    assert_eq!(v["triple_points"]["blue"].as_u64().unwrap() + v["triple_points"]["red"].as_u64().unwrap(), 6);
    assert_eq!(v["ladderpoles"]["0"], 1);
}
