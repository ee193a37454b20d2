//! Graph sources: a graph6 string, a file, or a family spec.

use std::fs;
use std::path::Path;

use spectral_chroma::graph::{encode_graph6, parse_dimacs, parse_edge_list, parse_graph6};
use spectral_chroma::{corpus, Error, Family, Graph, Result, WeightVector};

/// A graph with the label used in reports and certificate file names.
#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl NamedGraph {
    fn from_family(f: Family) -> Result<Self> {
        Ok(NamedGraph {
            name: f.name(),
            graph: f.generate()?,
        })
    }

    fn from_graph6(text: &str) -> Result<Self> {
        let graph = parse_graph6(text)?;
        Ok(NamedGraph {
            name: encode_graph6(&graph),
            graph,
        })
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Graph6(String),
    File(String),
    Family(Vec<String>),
}

impl Source {
    pub fn load(&self) -> Result<Vec<NamedGraph>> {
        match self {
            Source::Graph6(s) => Ok(vec![NamedGraph::from_graph6(s.trim())?]),
            Source::File(path) => load_file(Path::new(path)),
            Source::Family(words) => expand_family(words),
        }
    }

    /// Exactly one graph, for the single-graph commands.
    pub fn load_one(&self) -> Result<NamedGraph> {
        let mut all = self.load()?;
        match all.len() {
            1 => Ok(all.pop().unwrap()),
            0 => Err(Error::InvalidInput("input holds no graph".into())),
            k => Err(Error::InvalidInput(format!(
                "this command takes one graph, input holds {k} (use `batch`)"
            ))),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

enum FileFormat {
    Graph6,
    Dimacs,
    EdgeList,
}

fn sniff(path: &Path, text: &str) -> FileFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => return FileFormat::Graph6,
        Some("col" | "dimacs") => return FileFormat::Dimacs,
        Some("edges" | "el") => return FileFormat::EdgeList,
        _ => {}
    }
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("p ") || first.starts_with("c ") || first == "c" {
        FileFormat::Dimacs
    } else if first.split_whitespace().count() == 2 {
        FileFormat::EdgeList
    } else {
        FileFormat::Graph6
    }
}

/// graph6 files hold one graph per nonblank line; DIMACS and edge-list files
/// hold a single graph.
fn load_file(path: &Path) -> Result<Vec<NamedGraph>> {
    let text = read(path)?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("graph")
        .to_string();
    let single = |graph: Graph| Ok(vec![NamedGraph { name: stem.clone(), graph }]);
    match sniff(path, &text) {
        FileFormat::Dimacs => single(parse_dimacs(&text)?),
        FileFormat::EdgeList => single(parse_edge_list(&text)?),
        FileFormat::Graph6 => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(NamedGraph::from_graph6)
            .collect(),
    }
}

/// `"3..11"` → `3..=11`; a plain number is a one-element range.
fn parse_range(word: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidInput(format!("expected a count or range `a..b`, got `{word}`"));
    match word.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![word.parse().map_err(|_| bad())?]),
    }
}

fn arg<'a>(words: &'a [String], i: usize, what: &str) -> Result<&'a str> {
    words
        .get(i)
        .map(String::as_str)
        .ok_or_else(|| Error::InvalidInput(format!("family `{}` needs {what}", words[0])))
}

/// Family specs:
///
/// ```text
/// cycle N | complete N | empty N | petersen | kneser N K
/// multipartite A B … (or A,B,…) | gnp N P SEED
/// corpus [named|random|full]
/// ```
///
/// `N`, `K` and `SEED` accept inclusive ranges `a..b`, which expand to one
/// graph per value.
pub fn expand_family(words: &[String]) -> Result<Vec<NamedGraph>> {
    let Some(kind) = words.first() else {
        return Err(Error::InvalidInput("empty family spec".into()));
    };
    let fams: Vec<Family> = match kind.to_ascii_lowercase().as_str() {
        "cycle" => parse_range(arg(words, 1, "N")?)?.into_iter().map(Family::Cycle).collect(),
        "complete" => parse_range(arg(words, 1, "N")?)?.into_iter().map(Family::Complete).collect(),
        "empty" => parse_range(arg(words, 1, "N")?)?.into_iter().map(Family::Empty).collect(),
        "petersen" => vec![Family::Petersen],
        "kneser" => {
            let ns = parse_range(arg(words, 1, "N")?)?;
            let ks = parse_range(arg(words, 2, "K")?)?;
            ns.iter()
                .flat_map(|&n| ks.iter().map(move |&k| Family::Kneser { n, k }))
                .collect()
        }
        "multipartite" => {
            let parts: Result<Vec<usize>> = words[1..]
                .iter()
                .flat_map(|w| w.split(','))
                .filter(|w| !w.is_empty())
                .map(|w| {
                    w.parse()
                        .map_err(|_| Error::InvalidInput(format!("bad part size `{w}`")))
                })
                .collect();
            vec![Family::CompleteMultipartite(parts?)]
        }
        "gnp" | "erdos-renyi" => {
            let ns = parse_range(arg(words, 1, "N")?)?;
            let p: f64 = arg(words, 2, "P")?
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad probability `{}`", words[2])))?;
            let seeds = parse_range(arg(words, 3, "SEED")?)?;
            ns.iter()
                .flat_map(|&n| {
                    seeds.iter().map(move |&s| Family::ErdosRenyi {
                        n,
                        p,
                        seed: s as u64,
                    })
                })
                .collect()
        }
        "corpus" => {
            let entries = match words.get(1).map(String::as_str).unwrap_or("full") {
                "named" => corpus::named(),
                "random" => corpus::random(),
                "full" => corpus::full(),
                other => return Err(Error::InvalidInput(format!("unknown corpus `{other}`"))),
            };
            entries.into_iter().map(|e| e.family).collect()
        }
        other => return Err(Error::InvalidInput(format!("unknown family `{other}`"))),
    };
    fams.into_iter().map(NamedGraph::from_family).collect()
}

/// One nonnegative real per nonblank line; `#` starts a comment.
pub fn load_weights(path: &str, n: usize) -> Result<WeightVector> {
    let text = read(Path::new(path))?;
    let mut w = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::ParseLine {
            line: i + 1,
            message: format!("invalid weight `{line}`"),
        })?;
        w.push(v);
    }
    if w.len() != n {
        return Err(Error::InvalidInput(format!(
            "weights file has {} entries, graph has {n} vertices",
            w.len()
        )));
    }
    WeightVector::new(w)
}
