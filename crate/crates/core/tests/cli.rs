mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dirtruss::report::load_component_file;
use dirtruss::{k_truss_components, TrussType};

fn dirtruss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirtruss")).args(args).output().unwrap()
}

fn write_input(dir: &Path, text: &str) -> String {
    let p = dir.join("input.edges");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn data_rows(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().skip(1).map(str::to_owned).collect()
}

const K4: &str = "1 2\n2 1\n1 3\n3 1\n1 4\n4 1\n2 3\n3 2\n2 4\n4 2\n3 4\n4 3\n";

#[test]
fn census_writes_supports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let input = write_input(dir.path(), "1 2\n2 3\n3 1\n");
    let o = dirtruss(&["census", "--input", &input, "--out-dir", out]);
    assert!(o.status.success());
    let rows = data_rows(&dir.path().join("supports.tsv"));
    assert_eq!(rows, vec!["1\t2\t1\t0", "2\t3\t1\t0", "3\t1\t1\t0"]);
    let totals: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(totals["cycle_triangles"], 1);
    assert_eq!(totals["flow_triangles"], 0);

    let input = write_input(dir.path(), "a b\na c\nb c\n");
    assert!(dirtruss(&["census", "--input", &input, "--out-dir", out]).status.success());
    assert!(data_rows(&dir.path().join("supports.tsv")).iter().all(|r| r.ends_with("\t0\t1")));
}

#[test]
fn census_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "1 2\n1 3\n2 3\n");
    let o = dirtruss(&["census", "--input", &input, "--out-dir", dir.path().to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("supports.json")).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(rows[0]["flow_support"], 1);
}

#[test]
fn truss_on_bidirectional_k4() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), K4);
    let o = dirtruss(&["truss", "--input", &input, "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = data_rows(&dir.path().join("truss.tsv"));
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.ends_with("\t2\t6")));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["cycle"]["k_max"], 2);
    assert_eq!(report["flow"]["k_max"], 6);
    assert!(report["overlap"]["R"].is_null());
    assert!(report["overlap"]["reason"].is_string());
    assert!(report["ensemble"].is_null());
    assert_eq!(report["reciprocity"], 1.0);
}

#[test]
fn report_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let g = common::gnp(30, 0.2, 8);
    let mut text = Vec::new();
    g.write_edge_list(&mut text).unwrap();
    let input = write_input(dir.path(), std::str::from_utf8(&text).unwrap());
    let mut reports = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("run{run}"));
        let o = dirtruss(&[
            "truss", "--input", &input, "--out-dir", out.to_str().unwrap(), "--samples", "5", "--seed", "3",
        ]);
        assert!(o.status.success());
        reports.push(fs::read(out.join("report.json")).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let report: serde_json::Value = serde_json::from_slice(&reports[0]).unwrap();
    assert_eq!(report["ensemble"]["samples"], 5);
    assert_eq!(report["ensemble"]["seed"], 3);
    assert_eq!(report["ensemble"]["swaps_per_edge"], 10);
    assert!(report["ensemble"]["flow"]["D"].is_number());
}

#[test]
fn empty_input_fails_with_no_edges() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "# nothing\n1 1\n");
    let o = dirtruss(&["truss", "--input", &input, "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no edges"));
}

#[test]
fn malformed_line_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "1 2\n2 3\nlonely\n");
    let o = dirtruss(&["census", "--input", &input, "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(dirtruss(&["truss"]).status.code(), Some(1));
    assert_eq!(dirtruss(&["extract", "--input", "x", "--type", "wedge", "--k", "1"]).status.code(), Some(1));
    assert_eq!(dirtruss(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_input_is_input_error() {
    let o = dirtruss(&["census", "--input", "/nonexistent/graph.edges"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn extract_beyond_kmax_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "1 2\n2 3\n3 1\n");
    let out = dir.path().join("out");
    let o = dirtruss(&["extract", "--input", &input, "--out-dir", out.to_str().unwrap(), "--type", "cycle", "--k", "2"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no cycle 2-truss"));
    assert_eq!(fs::read_dir(&out).unwrap().count(), 0);
}

#[test]
fn extracted_components_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    // a bidirectional 4-clique, a separate 3-cycle, and a bridge
    let text = format!("{K4}7 8\n8 9\n9 7\n4 7\n");
    let input = write_input(dir.path(), &text);
    let labels = dir.path().join("labels.tsv");
    fs::write(&labels, "7\tseven\n8\teight\n9\tnine of hearts\n").unwrap();
    let out = dir.path().join("out");
    let o = dirtruss(&[
        "extract", "--input", &input, "--labels", labels.to_str().unwrap(), "--out-dir", out.to_str().unwrap(),
        "--type", "cycle", "--k", "1", "--format", "json",
    ]);
    assert!(o.status.success());
    let first = out.join("cycle_k1_comp0.edges");
    let second = out.join("cycle_k1_comp1.edges");
    assert!(out.join("cycle_k1_comp0.dot").exists());
    assert!(out.join("cycle_k1_components.json").exists());
    let g0 = load_component_file(&first).unwrap();
    let g1 = load_component_file(&second).unwrap();
    assert_eq!(g0.edge_count(), 12);
    assert_eq!(g1.edge_count(), 3);
    assert!(g1.node_by_token("nine_of_hearts").is_some());
    for g in [g0, g1] {
        let comps = k_truss_components(&g, TrussType::Cycle, 1);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].edges.len(), g.edge_count());
    }
    let dot = fs::read_to_string(out.join("cycle_k1_comp1.dot")).unwrap();
    assert!(dot.contains("\"nine of hearts\""));
    assert!(dot.contains("class=\"cycle\""));
    let dot = fs::read_to_string(out.join("cycle_k1_comp0.dot")).unwrap();
    assert!(dot.contains("class=\"both\""));
}

#[test]
fn randomize_writes_degree_preserving_samples() {
    let dir = tempfile::tempdir().unwrap();
    let g = common::gnp(20, 0.2, 1);
    let mut text = Vec::new();
    g.write_edge_list(&mut text).unwrap();
    let input = write_input(dir.path(), std::str::from_utf8(&text).unwrap());
    let out = dir.path().join("rand");
    let o = dirtruss(&[
        "randomize", "--input", &input, "--out-dir", out.to_str().unwrap(), "--samples", "3", "--seed", "5",
    ]);
    assert!(o.status.success());
    let (orig, _) = dirtruss::load_edge_list_path(Path::new(&input), None).unwrap();
    for i in 0..3 {
        let (h, _) = dirtruss::load_edge_list_path(&out.join(format!("random_{i}.edges")), None).unwrap();
        let deg = |g: &dirtruss::DirectedGraph| {
            let mut d: Vec<_> = (0..g.node_count())
                .map(|v| (g.token(v).to_owned(), g.out_degree(v), g.in_degree(v)))
                .collect();
            d.sort();
            d
        };
        assert_eq!(h.edge_count(), orig.edge_count());
        // isolated nodes vanish from an edge list; compare nodes with edges
        let nonzero = |d: Vec<(String, usize, usize)>| d.into_iter().filter(|x| x.1 + x.2 > 0).collect::<Vec<_>>();
        assert_eq!(nonzero(deg(&h)), nonzero(deg(&orig)));
    }
}

#[test]
fn celegans_census_counts_edges() {
    let input = common::data_path("celegans.edges");
    let dir = tempfile::tempdir().unwrap();
    let o = dirtruss(&["census", "--input", input.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let totals: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(totals["edges"], 2990);
    assert_eq!(totals["nodes"], 279);
}
