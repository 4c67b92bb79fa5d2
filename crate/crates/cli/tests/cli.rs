use std::io::Write;
use std::process::{Command, Output};

use ellfib_core::atiyah::RegLemmaReport;
use ellfib_core::chern::D2Thresholds;
use ellfib_core::lattice::{EvenLattice, OrbitPartition};
use ellfib_core::model_surfaces::{CoverNumerology, RationalSurfaceDivisor};
use ellfib_core::p1bundles::SplittingType;

fn ellfib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellfib"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn lattice_file(gram: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(gram.as_bytes()).unwrap();
    f
}

const UU: &str = "[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]";

#[test]
fn n2_table_rows() {
    let out = ellfib(&[
        "tables",
        "--corollary",
        "n2",
        "--dmax",
        "6",
        "--format",
        "tsv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let d: i64 = row[0].parse().unwrap();
        assert_eq!(row[1], (d - 1).to_string());
        assert_eq!(row[3], (2 * d - 10).to_string());
        assert_eq!(row[4], (2 * d - 6).to_string());
        assert!(row[5].contains("2d-10"));
    }
}

#[test]
fn n3_table_json_rows() {
    let out = ellfib(&[
        "tables",
        "--corollary",
        "n3",
        "--dmin",
        "2",
        "--dmax",
        "7",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in rows.as_array().unwrap() {
        let d = row["d"].as_i64().unwrap();
        assert_eq!(row["d2_h1"].as_i64().unwrap(), 3 * d - 12);
        assert_eq!(row["d2_basepoint"].as_i64().unwrap(), 3 * d - 8);
        let cover: CoverNumerology = serde_json::from_value(row["h1_cover"].clone()).unwrap();
        assert_eq!(cover.d, d);
    }
}

#[test]
fn components_prints_the_count() {
    let out = ellfib(&["components", "--d", "3", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn check_exit_codes() {
    let out = ellfib(&["check", "--type", "-3,-1", "--d", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "pass\n");

    let out = ellfib(&["check", "--type", "-5,-1", "--d", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("top gap bound"), "{err}");

    let out = ellfib(&["check", "--type", "-1,-3", "--d", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));

    let out = ellfib(&["check", "--type", "-1,x", "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("--type"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        ellfib(&["bounds", "--n", "3", "--d", "2", "--frobnicate"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ellfib(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        ellfib(&["enumerate", "--n", "2", "--d", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ellfib(&[
            "pontrjagin",
            "--lattice",
            "/no/such/file",
            "--n",
            "2",
            "--class",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(
        ellfib(&["cover2", "--a", "0", "--N", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        ellfib(&["cover3", "--a", "1", "--b", "1", "--N", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ellfib(&["components", "--d", "1", "--n", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ellfib(&["leray", "--drops", "1,2", "--k", "-1", "--t", "0"])
            .status
            .code(),
        Some(1)
    );
    let odd = lattice_file("[[1,0],[0,2]]");
    let path = odd.path().to_str().unwrap();
    assert_eq!(
        ellfib(&[
            "pontrjagin",
            "--lattice",
            path,
            "--n",
            "2",
            "--class",
            "1,0"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn json_round_trips_through_core_types() {
    let out = ellfib(&[
        "enumerate",
        "--n",
        "2",
        "--d",
        "3",
        "--delta",
        "-4",
        "--format",
        "json",
    ]);
    let types: Vec<SplittingType> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        types,
        vec![
            SplittingType::new(vec![-3, -1]).unwrap(),
            SplittingType::new(vec![-2, -2]).unwrap()
        ]
    );

    let out = ellfib(&[
        "cover3", "--a", "1", "--b", "3", "--N", "10", "--t", "2", "--format", "json",
    ]);
    let cover: CoverNumerology = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        cover,
        ellfib_core::model_surfaces::triple_cover(1, 3, 10).unwrap()
    );

    let out = ellfib(&["thresholds", "--n", "2", "--d", "5", "--format", "json"]);
    let t: D2Thresholds = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((t.h1_bound, t.basepoint_bound), (0, 4));

    let out = ellfib(&["ratsurf", "--n", "7", "--format", "json"]);
    let r: RationalSurfaceDivisor = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((r.d_squared, r.fiber_degree, r.chi), (5, 7, 7));

    let out = ellfib(&["reg-lemma", "--e", "5", "--format", "json"]);
    let report: RegLemmaReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed());

    let out = ellfib(&["lattice", "--d", "2"]);
    let l: EvenLattice = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(l, EvenLattice::lambda_d(2).unwrap());
}

#[test]
fn orbit_outputs() {
    let f = lattice_file(UU);
    let path = f.path().to_str().unwrap();
    let out = ellfib(&["orbit", "--lattice", path, "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let p: OrbitPartition = serde_json::from_slice(&out.stdout).unwrap();
    assert!(p.single_orbit_per_level());
    assert_eq!(p.orbits.iter().map(|o| o.len()).sum::<usize>(), 80);

    let out = ellfib(&["orbit", "--lattice", path, "--n", "2", "--format", "tsv"]);
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "coords\tdivisibility\tpontrjagin\torbit"
    );
    assert_eq!(text.lines().count(), 16);

    let out = ellfib(&["orbit", "--lattice", path, "--n", "5", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pontrjagin_labels() {
    let f = lattice_file(UU);
    let path = f.path().to_str().unwrap();
    let out = ellfib(&[
        "pontrjagin",
        "--lattice",
        path,
        "--n",
        "3",
        "--class",
        "1,1,0,0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pontrjagin"], 2);
    assert_eq!(v["label"]["kind"], "classified");
    let out = ellfib(&[
        "pontrjagin",
        "--lattice",
        path,
        "--n",
        "4",
        "--class",
        "2,-2,0,0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"]["kind"], "out_of_classified_range");
    assert_eq!(v["divisibility"], 2);
}

#[test]
fn bounds_text_lists_every_rank() {
    let out = ellfib(&["bounds", "--n", "4", "--d", "3", "--p1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines()
            .filter(|l| l.contains("(r(n-r)+e-1)d/(2nr)"))
            .count(),
        3
    );
    assert!(text.contains("3d/2"));
}
