#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn wikirank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wikirank"))
        .args(args)
        .env_remove("WIKIRANK_CACHE_DIR")
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// `(person_id, country, birth year, gender, EN, FR, DE titles)`.
pub const PERSONS: &[(&str, &str, &str, &str, &str, &str, &str)] = &[
    ("Napoleon", "FR", "1769", "male", "Napoleon", "Napoléon Ier", "Napoleon Bonaparte"),
    ("Isaac Newton", "UK", "1643", "male", "Isaac Newton", "Isaac Newton", "Isaac Newton"),
    ("Marie Curie", "PL", "1867", "female", "Marie Curie", "Marie Curie", "Marie Curie"),
    ("Johann Wolfgang von Goethe", "DE", "1749", "male", "Johann Wolfgang von Goethe", "Goethe", "Johann Wolfgang von Goethe"),
    ("Aristotle", "GR", "-384", "male", "Aristotle", "Aristote", "Aristoteles"),
    ("Joan of Arc", "FR", "1412", "female", "Joan of Arc", "Jeanne d'Arc", "Jeanne d’Arc"),
    ("Albert Einstein", "DE", "1879", "male", "Albert Einstein", "Albert Einstein", "Albert Einstein"),
    ("Victor Hugo", "FR", "1802", "male", "Victor Hugo", "Victor Hugo", "Victor Hugo"),
    ("Confucius", "CN", "-551", "male", "Confucius", "Confucius", "Konfuzius"),
    ("Queen Victoria", "UK", "1819", "female", "Queen Victoria", "Victoria (reine)", "Victoria (Vereinigtes Königreich)"),
    ("Unknown Scribe", "XX", "", "unknown", "Unknown Scribe", "", ""),
];

/// Planted in-link counts per edition: a person with more dedicated
/// referrers ranks higher. Order is the expected top list.
pub fn planted(edition: &str) -> Vec<(&'static str, usize)> {
    match edition {
        "EN" => vec![
            ("Isaac Newton", 12),
            ("Queen Victoria", 11),
            ("Napoleon", 10),
            ("Aristotle", 9),
            ("Albert Einstein", 8),
            ("Marie Curie", 7),
            ("Unknown Scribe", 6),
            ("Confucius", 5),
        ],
        "FR" => vec![
            ("Napoléon Ier", 14),
            ("Victor Hugo", 12),
            ("Jeanne d'Arc", 11),
            ("Aristote", 9),
            ("Isaac Newton", 8),
            ("Marie Curie", 6),
        ],
        "DE" => vec![
            ("Johann Wolfgang von Goethe", 13),
            ("Albert Einstein", 12),
            ("Napoleon Bonaparte", 10),
            ("Aristoteles", 9),
            ("Konfuzius", 7),
            ("Jeanne d’Arc", 5),
        ],
        _ => Vec::new(),
    }
}

pub fn person_for_title(edition: &str, title: &str) -> &'static str {
    let col = match edition {
        "EN" => 4,
        "FR" => 5,
        _ => 6,
    };
    PERSONS
        .iter()
        .find(|p| [p.4, p.5, p.6][col - 4] == title)
        .map(|p| p.0)
        .expect("planted title is registered")
}

pub struct Corpus {
    pub dir: tempfile::TempDir,
    pub config: PathBuf,
}

impl Corpus {
    pub fn path(&self, rel: &str) -> PathBuf {
        self.dir.path().join(rel)
    }

    pub fn out(&self) -> PathBuf {
        self.path("out")
    }
}

fn edge_list(edition: &str) -> String {
    let mut s = String::from("# tab-separated: title<TAB>title\n");
    // A few articles that are not persons, linking into the hub.
    for k in 0..4 {
        s.push_str(&format!("Topic {edition} {k}\tHub {edition}\n"));
    }
    for (title, count) in planted(edition) {
        for k in 0..count {
            s.push_str(&format!("Ref {title} {k}\t{title}\n"));
        }
        s.push_str(&format!("{title}\tHub {edition}\n"));
    }
    // Enough topics point at the hub for it to outrank every person.
    for k in 0..30 {
        s.push_str(&format!("Topic {edition} {k}x\tHub {edition}\n"));
    }
    s
}

/// Three person editions plus JA, whose graph has no person articles.
pub fn corpus() -> Corpus {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    fs::create_dir(root.join("graphs")).unwrap();
    let mut persons = String::from("person_id\tbirth_country\tbirth_year\tgender\tEN\tFR\tDE\n");
    for p in PERSONS {
        persons.push_str(&[p.0, p.1, p.2, p.3, p.4, p.5, p.6].join("\t"));
        persons.push('\n');
    }
    fs::write(root.join("persons.tsv"), persons).unwrap();
    let mut editions = String::new();
    for e in ["EN", "FR", "DE", "JA"] {
        let name = format!("graphs/{}.tsv", e.to_lowercase());
        let body = if e == "JA" {
            "東京\t日本\n日本\t東京\n富士山\t日本\n".to_string()
        } else {
            edge_list(e)
        };
        fs::write(root.join(&name), body).unwrap();
        editions.push_str(&format!("{e} = {name}\n"));
    }
    let config = format!(
        "# toy corpus\nalpha = 0.85\ntop_n = 100\npersons = persons.tsv\nlabel_mode = string\n\
         output_dir = out\ncache_dir = cache\n\n[editions]\n{editions}"
    );
    let config_path = root.join("wikirank.conf");
    fs::write(&config_path, config).unwrap();
    Corpus { dir, config: config_path }
}

pub fn read_csv(path: &Path) -> Vec<BTreeMap<String, String>> {
    let mut rdr = csv::Reader::from_path(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let headers = rdr.headers().unwrap().clone();
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            headers.iter().map(String::from).zip(r.iter().map(String::from)).collect()
        })
        .collect()
}
