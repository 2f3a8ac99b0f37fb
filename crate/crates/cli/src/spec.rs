//! Graph arguments: a path to a graph6 or JSON file, or a family spec such as
//! `kneser:t=5`, `h-with-edge:n=20,r=2,k=3,part=0`, `h-prime-l:n=14,r=2,k=2,L=3/0`
//! or `2xcomplete:k=3` (two disjoint copies).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use sha2::{Digest, Sha256};
use supersat::constructions::{
    self as c, Elementary, LabeledHost, PartLabel, PiecedPattern, StarPlacement, StarProfile,
};
use supersat::io::{from_graph6, GraphJson};
use supersat::Graph;

/// A resolved graph argument.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub spec: String,
    pub graph: Graph,
    /// Part structure, for constructed hosts and labelled JSON files.
    pub host: Option<LabeledHost>,
    /// Named vertex pieces, for the patterns that have them.
    pub pieced: Option<PiecedPattern>,
    /// SHA-256 of the file contents, or of the spec text for families.
    pub digest: String,
}

pub const FAMILIES: &[&str] = &[
    "turan",
    "h-nrk",
    "h-with-edge",
    "h-star",
    "h-nrkq",
    "h-l",
    "h-prime-l",
    "turan-matching",
    "h-detached",
    "kneser",
    "petersen",
    "section3",
    "fig1b",
    "matching",
    "star",
    "path",
    "independent",
    "complete",
    "cycle",
];

struct Params {
    family: String,
    map: BTreeMap<String, String>,
}

impl Params {
    fn num(&self, key: &str) -> Result<usize> {
        let v = self
            .map
            .get(key)
            .ok_or_else(|| anyhow!("{} needs parameter {key}", self.family))?;
        v.parse()
            .with_context(|| format!("{key}={v} is not a non-negative integer"))
    }

    fn num_or(&self, key: &str, default: usize) -> Result<usize> {
        if self.map.contains_key(key) {
            self.num(key)
        } else {
            Ok(default)
        }
    }

    fn profile(&self) -> Result<StarProfile> {
        let v = self
            .map
            .get("L")
            .ok_or_else(|| anyhow!("{} needs L=l1/l2/...", self.family))?;
        let parts = v
            .split('/')
            .map(|x| x.parse::<usize>().with_context(|| format!("bad star size {x}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(StarProfile(parts))
    }

    fn check_known(&self, keys: &[&str]) -> Result<()> {
        for k in self.map.keys() {
            if !keys.contains(&k.as_str()) {
                bail!("{} does not take parameter {k}", self.family);
            }
        }
        Ok(())
    }
}

fn parse_params(text: &str) -> Result<Params> {
    let (family, rest) = text.split_once(':').unwrap_or((text, ""));
    let mut map = BTreeMap::new();
    for item in rest.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter {item:?} is not key=value"))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(Params {
        family: family.trim().replace('_', "-").to_lowercase(),
        map,
    })
}

fn sha(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn plain(graph: Graph) -> (Graph, Option<LabeledHost>, Option<PiecedPattern>) {
    (graph, None, None)
}

fn hosted(h: LabeledHost) -> (Graph, Option<LabeledHost>, Option<PiecedPattern>) {
    (h.graph.clone(), Some(h), None)
}

fn pieced(p: PiecedPattern) -> (Graph, Option<LabeledHost>, Option<PiecedPattern>) {
    (p.graph.clone(), None, Some(p))
}

fn family(p: &Params, pattern: Option<&Graph>) -> Result<(Graph, Option<LabeledHost>, Option<PiecedPattern>)> {
    let f = p.family.as_str();
    let nrk = || -> Result<(usize, usize, usize)> { Ok((p.num("n")?, p.num("r")?, p.num_or("k", 1)?)) };
    let out = match f {
        "turan" => {
            p.check_known(&["n", "r"])?;
            hosted(c::turan(p.num("n")?, p.num("r")?)?)
        }
        "h-nrk" => {
            p.check_known(&["n", "r", "k"])?;
            let (n, r, k) = nrk()?;
            hosted(c::h_nrk(n, r, k)?)
        }
        "h-with-edge" | "turan-matching" | "h-detached" => {
            p.check_known(&["n", "r", "k", "part"])?;
            let (n, r, k) = nrk()?;
            let part = p.num_or("part", 0)?;
            hosted(match f {
                "h-with-edge" => c::h_with_edge(n, r, k, part)?,
                "turan-matching" => c::turan_with_matching(n, r, k, part)?,
                _ => c::h_detached_edge(n, r, k, part)?,
            })
        }
        "h-star" => {
            p.check_known(&["n", "k", "q"])?;
            hosted(c::h_star_section3(p.num("n")?, p.num("k")?, p.num("q")?)?)
        }
        "h-nrkq" => {
            p.check_known(&["n", "r", "k", "q", "part"])?;
            let (n, r, k) = nrk()?;
            let placement = match p.map.get("part").map(String::as_str) {
                None | Some("min") => StarPlacement::Minimizing(
                    pattern.ok_or_else(|| anyhow!("h-nrkq without part= needs a pattern to minimise over"))?,
                ),
                Some(_) => StarPlacement::Part(p.num("part")?),
            };
            hosted(c::h_nrkq(n, r, k, p.num("q")?, placement)?)
        }
        "h-l" | "h-prime-l" => {
            p.check_known(&["n", "r", "k", "L"])?;
            let (n, r, k) = nrk()?;
            let profile = p.profile()?;
            hosted(if f == "h-l" {
                c::h_l(n, r, k, &profile)?
            } else {
                c::h_prime_l(n, r, k, &profile)?
            })
        }
        "kneser" => {
            p.check_known(&["t", "m"])?;
            plain(c::kneser(p.num("t")?, p.num_or("m", 2)?)?)
        }
        "petersen" => {
            p.check_known(&[])?;
            plain(c::kneser(5, 2)?)
        }
        "section3" => {
            p.check_known(&["k"])?;
            pieced(c::pattern_section3(p.num("k")?)?)
        }
        "fig1b" => {
            p.check_known(&["k", "s"])?;
            pieced(c::pattern_fig1b(p.num("k")?, p.num("s")?)?)
        }
        "matching" | "star" | "path" | "independent" | "complete" | "cycle" => {
            p.check_known(&["k"])?;
            let k = p.num("k")?;
            plain(c::elementary(match f {
                "matching" => Elementary::Matching(k),
                "star" => Elementary::Star(k),
                "path" => Elementary::Path(k),
                "independent" => Elementary::Independent(k),
                "complete" => Elementary::Complete(k),
                _ => Elementary::Cycle(k),
            })?)
        }
        other => bail!("unknown family {other:?}; known: {}", FAMILIES.join(", ")),
    };
    Ok(out)
}

fn parse_label(name: &str) -> Result<PartLabel> {
    let idx = |s: &str| -> Result<usize> {
        let i: usize = s.parse().with_context(|| format!("bad label {name:?}"))?;
        i.checked_sub(1)
            .ok_or_else(|| anyhow!("labels are numbered from 1: {name:?}"))
    };
    match name {
        "X" => Ok(PartLabel::Top),
        _ if name.starts_with('V') => Ok(PartLabel::Part(idx(&name[1..])?)),
        _ if name.starts_with('C') => Ok(PartLabel::Center(idx(&name[1..])?)),
        _ => bail!("unknown label {name:?} (expected X, V<i> or C<i>)"),
    }
}

/// Rebuilds the part structure from a JSON label map.
fn host_from_labels(graph: &Graph, labels: &BTreeMap<String, Vec<usize>>) -> Result<LabeledHost> {
    let mut per_vertex = vec![None; graph.n()];
    for (name, vs) in labels {
        let l = parse_label(name)?;
        for &v in vs {
            let slot = per_vertex
                .get_mut(v)
                .ok_or_else(|| anyhow!("label {name} names vertex {v}"))?;
            if slot.replace(l).is_some() {
                bail!("vertex {v} carries two labels");
            }
        }
    }
    let labels: Vec<PartLabel> = per_vertex
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| anyhow!("vertex {v} has no label")))
        .collect::<Result<_>>()?;
    let r = labels.iter().filter_map(|l| l.part()).max().map_or(0, |m| m + 1);
    let mut parts = vec![Vec::new(); r];
    for (v, l) in labels.iter().enumerate() {
        if let Some(i) = l.part() {
            parts[i].push(v);
        }
    }
    Ok(LabeledHost {
        graph: graph.clone(),
        top: (0..graph.n()).filter(|&v| labels[v] == PartLabel::Top).collect(),
        centers: (0..graph.n())
            .filter(|&v| matches!(labels[v], PartLabel::Center(_)))
            .collect(),
        labels,
        parts,
        marked: Vec::new(),
        family: "file".into(),
        params: BTreeMap::new(),
    })
}

fn from_file(path: &Path) -> Result<(Graph, Option<LabeledHost>, String)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let digest = sha(&bytes);
    let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    if is_json {
        let parsed: GraphJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let g = parsed.to_graph()?;
        let host = parsed.labels.as_ref().map(|l| host_from_labels(&g, l)).transpose()?;
        Ok((g, host, digest))
    } else {
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        Ok((from_graph6(line.trim())?, None, digest))
    }
}

/// Resolves a graph argument. `pattern` feeds families that optimise against
/// a pattern (`h-nrkq` without `part=`).
pub fn resolve(spec: &str, pattern: Option<&Graph>) -> Result<Resolved> {
    let path = Path::new(spec);
    if path.is_file() {
        let (graph, host, digest) = from_file(path)?;
        return Ok(Resolved {
            spec: spec.to_string(),
            graph,
            host,
            pieced: None,
            digest,
        });
    }
    let (copies, rest) = match spec.split_once('x') {
        Some((num, rest)) if !num.is_empty() && num.chars().all(|ch| ch.is_ascii_digit()) => {
            (num.parse::<usize>()?, rest)
        }
        _ => (1, spec),
    };
    let params = parse_params(rest)?;
    let (graph, host, pieced) = family(&params, pattern)?;
    let (graph, host, pieced) = if copies == 1 {
        (graph, host, pieced)
    } else {
        if host.is_some() {
            bail!("disjoint copies are only supported for patterns");
        }
        (graph.scalar_union(copies), None, None)
    };
    Ok(Resolved {
        spec: spec.to_string(),
        graph,
        host,
        pieced,
        digest: sha(spec.as_bytes()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_resolve() {
        let p = resolve("kneser:t=5", None).unwrap();
        assert_eq!((p.graph.n(), p.graph.edge_count()), (10, 15));
        assert_eq!(resolve("petersen", None).unwrap().graph, p.graph);
        let h = resolve("h_with_edge:n=13,r=3,k=2,part=1", None).unwrap();
        assert_eq!(h.host.unwrap().marked.len(), 1);
        let two = resolve("2xcomplete:k=3", None).unwrap();
        assert_eq!(two.graph.edge_count(), 6);
        let l = resolve("h-prime-l:n=14,r=2,k=2,L=3/1", None).unwrap();
        assert_eq!(l.host.unwrap().centers.len(), 2);
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(resolve("kneser:t=5,z=1", None).is_err());
        assert!(resolve("nonsense", None).is_err());
        assert!(resolve("h-nrkq:n=12,r=2,k=1,q=2", None).is_err());
        assert!(resolve("kneser:t=x", None).is_err());
    }

    #[test]
    fn labels_round_trip_through_json() {
        let h = c::h_l(12, 2, 2, &StarProfile(vec![2, 1])).unwrap();
        let json = GraphJson::from_graph(&h.graph, Some(&h.label_strings()));
        let back = host_from_labels(&h.graph, json.labels.as_ref().unwrap()).unwrap();
        assert_eq!(back.labels, h.labels);
        assert_eq!(back.parts, h.parts);
    }
}
