//! Cross-checks against an independently computed table of census entries
//! (colour counts, cusps, ladderpole counts per cusp, first homology).

use veerkit::branched::ladderpole_counts;
use veerkit::{homology_h1, VeeringTriangulation};

struct Row {
    entry: String,
    blue: usize,
    red: usize,
    cusps: usize,
    ladders: Vec<usize>,
    h1: String,
}

fn rows() -> Vec<Row> {
    include_str!("data/census_sample.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            Row {
                entry: f[0].to_string(),
                blue: f[1].parse().unwrap(),
                red: f[2].parse().unwrap(),
                cusps: f[3].parse().unwrap(),
                ladders: f[4].split(',').map(|x| x.parse().unwrap()).collect(),
                h1: f[5].to_string(),
            }
        })
        .collect()
}

#[test]
fn colour_counts_agree_up_to_mirror() {
    for r in rows() {
        let vt = VeeringTriangulation::from_entry(&r.entry).unwrap();
        let got = (vt.blue(), vt.red());
        assert!(got == (r.blue, r.red) || got == (r.red, r.blue), "{}: {:?}", r.entry, got);
    }
}

#[test]
fn cusp_counts_agree() {
    for r in rows() {
        let vt = VeeringTriangulation::from_entry(&r.entry).unwrap();
        assert_eq!(vt.cusp_count(), r.cusps, "{}", r.entry);
    }
}

#[test]
fn homology_agrees() {
    for r in rows() {
        let vt = VeeringTriangulation::from_entry(&r.entry).unwrap();
        let h = homology_h1(&vt.tri, None).unwrap();
        assert_eq!((h.rank, h.torsion.clone()), parse_group(&r.h1), "{}", r.entry);
    }
}

#[test]
fn cusp_circles_are_half_the_ladder_count() {
    for r in rows() {
        let vt = VeeringTriangulation::from_entry(&r.entry).unwrap();
        let mut got = ladderpole_counts(&vt).unwrap().ladderpoles;
        got.sort();
        let want: Vec<usize> = r.ladders.iter().map(|&x| x / 2).collect();
        assert_eq!(got, want, "{}", r.entry);
    }
}

fn parse_group(s: &str) -> (usize, Vec<i64>) {
    let mut rank = 0;
    let mut torsion = Vec::new();
    for term in s.split('+') {
        match term.strip_prefix("Z/") {
            Some(k) => torsion.push(k.parse().unwrap()),
            None if term == "Z" => rank += 1,
            None if term == "0" => {}
            None => panic!("bad group term {term}"),
        }
    }
    torsion.sort();
    (rank, torsion)
}
