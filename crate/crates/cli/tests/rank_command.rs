mod common;

use std::fs;

use common::{read_csv, stderr, wikirank};

fn two_node_graph(dir: &std::path::Path) -> std::path::PathBuf {
    let path = dir.join("pair.txt");
    fs::write(&path, "# nodes: 2\n0 1\n").unwrap();
    path
}

#[test]
fn two_node_probabilities() {
    let dir = tempfile::tempdir().unwrap();
    let graph = two_node_graph(dir.path());
    let out = dir.path().join("pr.csv");
    let o = wikirank(&["rank", graph.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));

    // Node 1 is dangling: P0 = 0.15/2 + 0.85 P1/2 with P1 = 1 - P0.
    let p0 = 0.5 / 1.425;
    let rows = read_csv(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["node_id"], "1");
    assert_eq!(rows[0]["rank"], "1");
    let got1: f64 = rows[0]["probability"].parse().unwrap();
    let got0: f64 = rows[1]["probability"].parse().unwrap();
    assert!((got0 - p0).abs() < 1e-9);
    assert!((got1 - (1.0 - p0)).abs() < 1e-9);
    assert!((got0 - 0.3508772).abs() < 1e-6);
}

#[test]
fn two_d_rank_columns() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    fs::write(&graph, "0 1\n1 2\n2 0\n0 2\n3 0\n").unwrap();
    let o = wikirank(&["rank", graph.to_str().unwrap(), "--algorithm", "2drank"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, ["node_id", "label", "K", "Kstar", "Kprime", "rank"]);
    let mut last = 0;
    for r in rdr.records() {
        let r = r.unwrap();
        let (k, ks, kp): (u32, u32, u32) = (r[2].parse().unwrap(), r[3].parse().unwrap(), r[4].parse().unwrap());
        assert_eq!(kp, k.max(ks));
        assert!(kp >= last);
        last = kp;
    }
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    fs::write(&graph, "0 1\n1 2\n2 0\n2 3\n4 2\n").unwrap();
    let cache = dir.path().join("cache");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = wikirank(&[
            "rank",
            graph.to_str().unwrap(),
            "--algorithm",
            "2drank",
            "--cache-dir",
            cache.to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        (fs::read(out).unwrap(), stderr(&o))
    };
    let (cold, _) = run("cold.csv");
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 2, "one entry per vector kind");
    let (warm, _) = run("warm.csv");
    assert_eq!(cold, warm);

    for e in &entries {
        let mut bytes = fs::read(e).unwrap();
        bytes[..4].copy_from_slice(b"JUNK");
        fs::write(e, bytes).unwrap();
    }
    let (recomputed, log) = run("recomputed.csv");
    assert_eq!(cold, recomputed);
    assert!(log.contains("recomputing"), "{log}");
    for e in &entries {
        assert_eq!(&fs::read(e).unwrap()[..4], b"GMRK");
    }
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let graph = two_node_graph(dir.path());
    let cache = dir.path().join("env-cache");
    let o = std::process::Command::new(env!("CARGO_BIN_EXE_wikirank"))
        .args(["rank", graph.to_str().unwrap()])
        .env("WIKIRANK_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let graph = two_node_graph(dir.path());
    let g = graph.to_str().unwrap();

    let o = wikirank(&["rank", g, "--alpha", "1.0"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 1\n1 x\n").unwrap();
    let o = wikirank(&["rank", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = wikirank(&["rank", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let ring = dir.path().join("ring.txt");
    fs::write(&ring, "0 1\n1 2\n2 3\n3 0\n0 2\n").unwrap();
    let o = wikirank(&["rank", ring.to_str().unwrap(), "--max-iter", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn string_labels_and_label_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("titles.txt");
    fs::write(&graph, "Paris\tFrance\nLyon\tFrance\nFrance\tParis\n").unwrap();
    let o = wikirank(&["rank", graph.to_str().unwrap(), "--string-labels"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let first = rdr.records().next().unwrap().unwrap();
    assert_eq!(&first[1], "France");

    let ints = dir.path().join("ints.txt");
    fs::write(&ints, "0 1\n2 1\n1 0\n").unwrap();
    let labels = dir.path().join("labels.tsv");
    fs::write(&labels, "0\tParis\n1\tFrance\n2\tLyon\n").unwrap();
    let o = wikirank(&["rank", ints.to_str().unwrap(), "--labels", labels.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("1,France,"));
}
