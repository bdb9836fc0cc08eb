use std::path::Path;
use std::process::{Command, Output};

use special_covers::tree::{assign_ae, nu_from_leaves, star_tree, HurwitzTree, Marking};
use special_covers_io::tree_io::TreeDto;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_special-covers"));
    c.env_remove("SPECIAL_COVERS_MAX_EXT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_json(dir: &Path, name: &str, v: &impl serde::Serialize) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn five_leaf() -> HurwitzTree {
    let links = [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6)];
    let leaves = [1, 2, 3, 5, 6];
    let a = [1, 2, 1, 3, 5];
    let marked = (0..5).map(|i| Marking { leaf: leaves[i], a: a[i], nu: None }).collect();
    let t = HurwitzTree::from_links(7, &links, marked, 12);
    nu_from_leaves(&assign_ae(&t).unwrap(), [1, 2, 3]).unwrap()
}

#[test]
fn types_command() {
    let o = run(&["types", "--p", "5", "--r", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1 classes"));
    assert!(stdout(&o).contains("m=4 a=(1,1,1,1)"));

    let o = run(&["types", "--p", "7", "--r", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut multisets: Vec<Vec<u64>> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let mut a: Vec<u64> = serde_json::from_value(c["a"].clone()).unwrap();
            a.sort();
            a
        })
        .collect();
    multisets.dedup();
    multisets.sort();
    multisets.dedup();
    assert_eq!(multisets, [vec![1, 1, 1, 3], vec![1, 1, 2, 2]]);

    let o = run(&["types", "--p", "5", "--r", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 classes"));
    assert_eq!(run(&["types", "--p", "6", "--r", "4"]).status.code(), Some(2));
    assert_eq!(run(&["types", "--p", "7", "--r", "2"]).status.code(), Some(2));
    assert_eq!(run(&["types", "--p", "7"]).status.code(), Some(2));
}

#[test]
fn survey_command() {
    let o = run(&["survey", "--p", "13"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().get(0), Some("survey-1"));
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let lambdas: Vec<&str> =
        rows.iter().filter(|r| &r[2] == "4" && &r[3] == "1 1 1 1").map(|r| r.get(5).unwrap()).collect();
    assert_eq!(lambdas, ["4", "10"]);
    for r in &rows {
        assert_eq!(r[7], r[8], "expected and found counts differ");
    }
    // byte-identical reruns
    assert_eq!(run(&["survey", "--p", "13"]).stdout, o.stdout);

    let o = run(&["survey", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<csv::StringRecord> = csv::Reader::from_reader(text.as_bytes()).records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!((&rows[0][0], &rows[0][8]), ("none", "0"));

    let o = run(&["survey", "--p", "13", "--oracle"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stderr.is_empty());

    assert_eq!(run(&["survey", "--p", "13", "--r", "5"]).status.code(), Some(2));
    let o = bin().args(["survey", "--p", "7", "--oracle", "--oracle-degree", "2"]).env("SPECIAL_COVERS_MAX_EXT", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["survey", "--p", "7"]).env("SPECIAL_COVERS_MAX_EXT", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn survey_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for p in ["7", "13"] {
        let o = run(&["survey", "--p", p, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let path = dir.path().join(format!("survey{p}.json"));
        std::fs::write(&path, &o.stdout).unwrap();
        let v = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
        assert!(!stdout(&v).contains("FAIL"));
    }
}

#[test]
fn verify_command() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["survey", "--p", "7", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let datum = doc["rows"].as_array().unwrap().iter().find_map(|r| r.get("datum").cloned()).unwrap();
    let good = write_json(dir.path(), "good.json", &datum);
    assert_eq!(run(&["verify", &good]).status.code(), Some(0));

    let mut bad = datum.clone();
    bad["nu"] = serde_json::json!([1, 1, 0, 0]);
    let bad = write_json(dir.path(), "bad.json", &bad);
    let o = run(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL sum nu = r - 3"));

    let o = run(&["verify", "--format", "json", &bad]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], false);

    let text = std::fs::read_to_string(&good).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let o = run(&["verify", truncated.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(run(&["verify", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn invariants_command() {
    let o = run(&["invariants", "--p", "13", "--m", "4", "--a", "1,1,1,1", "--nu", "1,0,0,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["monodromy_order"], 20);
    let radii: Vec<&str> =
        v["per_index"].as_array().unwrap().iter().map(|x| x["disk_radius_exponent"].as_str().unwrap()).collect();
    assert_eq!(radii, ["13/15", "13/3", "13/3", "13/3"]);
    assert_eq!(v["assumes_rational_branch_points"], true);

    let o = run(&["invariants", "--p", "7", "--m", "6", "--a", "3,1,1,1", "--nu", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("monodromy order 18"));

    let o = run(&["invariants", "--p", "13", "--m", "5", "--a", "1,1,1,2", "--nu", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not divide"));
    let o = run(&["invariants", "--p", "13", "--m", "12", "--a", "1,1,1,9", "--nu", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tree_command() {
    let dir = tempfile::tempdir().unwrap();
    let star = star_tree(4, &[1, 1, 1, 1], &[1, 0, 0, 0], 4).unwrap();
    let star_path = write_json(dir.path(), "star.json", &TreeDto::from_tree(&star));
    let o = run(&["tree", &star_path, "--p", "13"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: star"));
    assert!(text.contains("thickness 1/60"));

    let five = write_json(dir.path(), "five.json", &TreeDto::from_tree(&five_leaf()));
    let o = run(&["tree", &five, "--check-special", "--s0", "1,2,3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["verdict"]["verdict"], "non_star_geometrically_impossible");
    assert_eq!(v["result"]["verdict"]["nu"], -2);
    assert_eq!(v["result"]["median"], 0);

    // leaf labels only: a_e and nu_e are filled in
    let mut bare = TreeDto::from_tree(&five_leaf());
    for e in &mut bare.edges {
        e.a = None;
        e.nu = None;
    }
    let bare = write_json(dir.path(), "bare.json", &bare);
    let o = run(&["tree", &bare, "--check-special", "--s0", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("non_star_geometrically_impossible"));
    assert_eq!(run(&["tree", &bare]).status.code(), Some(1));

    let mut broken = TreeDto::from_tree(&star);
    broken.edges[0].opposite = 3;
    let broken = write_json(dir.path(), "broken.json", &broken);
    let o = run(&["tree", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("structural"));
    assert_eq!(run(&["tree", &star_path, "--check-special", "--s0", "1,2"]).status.code(), Some(2));
}
