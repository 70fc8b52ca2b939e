//! End-to-end runs of the `squarekit` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_squarekit"));
    c.env_remove("SQUAREKIT_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("squarekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const CUBE: &str = r#"{"vertices":["000","001","010","011","100","101","110","111"],
"edges":[["000","001"],["000","010"],["000","100"],["001","011"],["001","101"],["010","011"],
["010","110"],["011","111"],["100","101"],["100","110"],["101","111"],["110","111"]]}"#;

#[test]
fn recognizes_a_grid_file() {
    let grid = run(&["generate", "--gen", "grid:3x4"]);
    let path = temp("grid.json", std::str::from_utf8(&grid.stdout).unwrap());
    let v = json_of(&run(&["recognize", "--in", path.to_str().unwrap()]));
    assert_eq!(v["verdict"], true);
    assert_eq!(v["boundary"].as_array().unwrap().len(), 10);
}

#[test]
fn cube_is_rejected_with_witness() {
    let path = temp("cube.json", CUBE);
    let out = run(&["recognize", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witness"]["kind"], "cube");
    assert_eq!(v["witness"]["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn cogwheel_embeds_in_three_trees() {
    let v = json_of(&run(&["embed", "--gen", "cogwheel:5"]));
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
    assert_eq!(v["coords"]["h"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["recognize"]).status.code(), Some(2));
    assert_eq!(run(&["recognize", "--gen", "grid:2x2", "--diagram", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["hull", "--gen", "grid:2x2", "--format", "svg"]).status.code(), Some(2));
    let bad = temp("bad.json", "{ not json");
    let out = run(&["recognize", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "json");
    let cube = temp("cube2.json", CUBE);
    let out = run(&["embed", "--in", cube.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "not-squaregraph");
    let out = run(&["generate", "--gen", "grid:0x3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn two_crossing_chords_render_as_circle_and_two_lines() {
    let out = run(&["render", "--diagram", "a,b,a,b"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let count = |tag: &str| doc.descendants().filter(|n| n.has_tag_name(tag)).count();
    assert_eq!((count("circle"), count("line")), (1, 2));
}

#[test]
fn grid_layout_centers_the_middle_vertex() {
    let out = run(&["render", "--gen", "grid:3x3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let polygon = doc.descendants().find(|n| n.has_tag_name("polygon")).unwrap();
    assert_eq!(polygon.attribute("points").unwrap().split_whitespace().count(), 8);
    let center = doc
        .descendants()
        .find(|n| n.has_tag_name("circle") && n.children().any(|c| c.has_tag_name("title") && c.text() == Some("1,1")))
        .unwrap();
    assert_eq!((center.attribute("cx"), center.attribute("cy")), (Some("200.000"), Some("200.000")));
    assert!(!text.contains("warning"));
}

#[test]
fn generated_diagrams_are_valid_svg() {
    let mut parsed = 0;
    for seed in 0..25 {
        let spec = format!("random:seed={seed},steps={}", seed % 12);
        let dual = json_of(&run(&["dual", "--gen", &format!("grid:{}x3", 2 + seed % 3)]));
        assert!(dual["chords"].as_u64().unwrap() >= 2);
        for args in [
            vec!["render", "--gen", spec.as_str()],
            vec!["dual", "--gen", spec.as_str(), "--format", "svg"],
            vec!["generate", "--gen", spec.as_str(), "--format", "svg"],
        ] {
            let out = run(&args);
            if !out.status.success() {
                // Graphs with articulation points have no boundary cycle to draw.
                let err: Value = serde_json::from_slice(&out.stderr).unwrap();
                assert_eq!(err["error"], "not-2-connected", "{args:?}");
                continue;
            }
            let text = String::from_utf8(out.stdout).unwrap();
            let doc = roxmltree::Document::parse(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
            assert_eq!(doc.root_element().tag_name().name(), "svg");
            parsed += 1;
        }
    }
    assert!(parsed >= 25, "only {parsed} documents drawn");
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let a = run(&["render", "--gen", "random:seed=11,steps=9"]);
    let b = run(&["render", "--gen", "random:seed=11,steps=9"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = std::env::temp_dir().join(format!("squarekit-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stats.json");
    let out = run(&["stats", "--gen", "grid:3x3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!((v["h"].as_u64(), v["s"].as_u64(), v["genset_size"].as_u64()), (Some(2), Some(2), Some(5)));
}

#[test]
fn seed_environment_override() {
    let explicit = run(&["generate", "--gen", "random:seed=99,steps=8"]);
    let overridden = bin().args(["generate", "--gen", "random:seed=1,steps=8"]).env("SQUAREKIT_SEED", "99").output().unwrap();
    assert_eq!(explicit.stdout, overridden.stdout);
    let bad = bin().args(["generate", "--gen", "random:seed=1,steps=8"]).env("SQUAREKIT_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn file_round_trips() {
    let g = run(&["generate", "--gen", "random:seed=5,steps=10"]);
    let gpath = temp("g.json", std::str::from_utf8(&g.stdout).unwrap());
    let again = run(&["generate", "--in", gpath.to_str().unwrap()]);
    assert_eq!(again.stdout, g.stdout);
    let s = run(&["splits", "--in", gpath.to_str().unwrap()]);
    let spath = temp("s.json", std::str::from_utf8(&s.stdout).unwrap());
    let s2 = run(&["splits", "--in", spath.to_str().unwrap()]);
    assert_eq!(s2.stdout, s.stdout);
    let dual = json_of(&run(&["dual", "--diagram", "1,2,3,4,2,1,4,3"]));
    let diagram_graph = json_of(&run(&["generate", "--gen", "grid:3x3"]));
    assert_eq!(dual["vertices"].as_array().unwrap().len(), diagram_graph["vertices"].as_array().unwrap().len());
    let back = json_of(&run(&["dual", "--gen", "grid:3x3"]));
    let round = json_of(&run(&["dual", "--diagram", back["diagram"].as_str().unwrap()]));
    assert_eq!(round["edges"].as_array().unwrap().len(), 12);
}

#[test]
fn hellyfy_split_file() {
    let splits = r#"{"ground":["x","y","z"],"splits":[[["x"],["y","z"]],[["y"],["x","z"]],[["z"],["x","y"]]]}"#;
    let path = temp("star.json", splits);
    let v = json_of(&run(&["hellyfy", "--in", path.to_str().unwrap()]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["elements"]["x"], "x");
    let text = run(&["hellyfy", "--in", path.to_str().unwrap(), "--format", "dot"]);
    assert!(String::from_utf8(text.stdout).unwrap().starts_with("graph"));
}

#[test]
fn other_commands() {
    let v = json_of(&run(&["genset", "--gen", "grid:3x3"]));
    assert_eq!(v["size"], 5);
    assert_eq!(v["inner_lines"].as_array().unwrap().len(), 2);
    let v = json_of(&run(&["hull", "--gen", "cogwheel:5"]));
    assert_eq!((v["h"].as_u64(), v["s"].as_u64(), v["shape"].as_str()), (Some(3), Some(2), Some("cycle")));
    let v = json_of(&run(&["curvature", "--gen", "grid:3x3"]));
    assert_eq!(v["curvature"]["1,1"], "0/1");
    assert_eq!(v["all_nonpositive"], true);
    let v = json_of(&run(&["medians", "--gen", "grid:3x3", "--triple", "0,0", "2,2", "0,2"]));
    assert_eq!(v["median"], "0,2");
    let v = json_of(&run(&["stats", "--gen", "simplex:cycle=5"]));
    assert_eq!((v["t"].as_u64(), v["c"].as_u64()), (Some(2), Some(3)));
    let v = json_of(&run(&["medians", "--in", temp("c.json", CUBE).to_str().unwrap()]));
    assert_eq!(v["median_graph"], true);
}
