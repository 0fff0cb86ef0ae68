//! The `family:param:param` mini-grammar, e.g. `bowtie:6:5`,
//! `product:cycle4:cycle5` or `complete_bipartite:3:3`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use extlab_core::generators::{self, Factor};
use extlab_core::graph::Vertex;
use extlab_core::{Graph, Matching};

fn number(text: &str) -> Result<usize> {
    text.parse()
        .with_context(|| format!("'{text}' is not a nonnegative integer"))
}

/// `cycle4`, `cycle:4`, `c4`, `path5`, `P5`.
pub fn parse_factor(text: &str) -> Result<Factor> {
    let t = text.to_ascii_lowercase();
    let split = t
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| anyhow!("factor '{text}' has no length"))?;
    let (name, len) = t.split_at(split);
    let len = number(len)?;
    match name.trim_end_matches(':') {
        "cycle" | "c" => Ok(Factor::Cycle(len)),
        "path" | "p" => Ok(Factor::Path(len)),
        other => bail!("unknown product factor '{other}'"),
    }
}

/// Builds a graph from a family name and its parameters.
pub fn build(family: &str, params: &[String]) -> Result<Graph> {
    let need = |k: usize| -> Result<()> {
        if params.len() != k {
            bail!(
                "family '{family}' takes {k} parameter(s), got {}",
                params.len()
            );
        }
        Ok(())
    };
    let g = match family {
        "path" => {
            need(1)?;
            generators::path(number(&params[0])?)?
        }
        "cycle" => {
            need(1)?;
            generators::cycle(number(&params[0])?)?
        }
        "complete" => {
            need(1)?;
            generators::complete(number(&params[0])?)?
        }
        "complete_bipartite" | "kbip" => {
            need(2)?;
            generators::complete_bipartite(number(&params[0])?, number(&params[1])?)?
        }
        "petersen" => {
            need(0)?;
            generators::petersen()
        }
        "bowtie" => {
            need(2)?;
            generators::bowtie(number(&params[0])?, number(&params[1])?)?
        }
        "product" => {
            let factors = merge_factor_tokens(params);
            if factors.len() != 2 {
                bail!("product takes two factors such as cycle4 cycle5");
            }
            generators::grid_product(parse_factor(&factors[0])?, parse_factor(&factors[1])?)?
        }
        other => bail!("unknown family '{other}'"),
    };
    Ok(g)
}

/// Joins `cycle`, `4` into `cycle4` so both spellings work.
fn merge_factor_tokens(params: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for p in params {
        match out.last_mut() {
            Some(last)
                if p.chars().all(|c| c.is_ascii_digit())
                    && last.chars().all(|c| c.is_ascii_alphabetic()) =>
            {
                last.push_str(p);
            }
            _ => out.push(p.clone()),
        }
    }
    out
}

/// A family spec `family:param:...`.
pub fn parse_spec(spec: &str) -> Result<Graph> {
    let mut parts = spec.split(':');
    let family = parts.next().unwrap_or_default();
    let params: Vec<String> = parts.map(str::to_string).collect();
    build(family, &params).with_context(|| format!("bad family spec '{spec}'"))
}

/// A graph JSON file if `source` names one, otherwise a family spec.
pub fn load_graph(source: &str) -> Result<Graph> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        return Graph::from_json(&text).with_context(|| format!("parsing {source}"));
    }
    parse_spec(source)
}

fn vertex_by_name(g: &Graph, name: &str) -> Result<Vertex> {
    let name = name.trim();
    if let Ok(id) = name.parse::<usize>() {
        g.check_vertex(id)?;
        return Ok(id);
    }
    g.vertices()
        .find(|&v| g.vertex_name(v) == name)
        .ok_or_else(|| anyhow!("no vertex named '{name}'"))
}

/// A matching given as a JSON file or as `a-b,c-d` with vertex ids or names
/// such as `h_1-h_2,q'_8-q'_9`.
pub fn load_matching(g: &Graph, source: &str) -> Result<Matching> {
    let path = Path::new(source);
    let edges: Vec<(Vertex, Vertex)> = if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        Matching::from_json(&text)?.edges().to_vec()
    } else {
        source
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|pair| {
                let (a, b) = pair
                    .split_once('-')
                    .ok_or_else(|| anyhow!("edge '{pair}' is not of the form a-b"))?;
                Ok((vertex_by_name(g, a)?, vertex_by_name(g, b)?))
            })
            .collect::<Result<_>>()?
    };
    Ok(Matching::new(g, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(parse_spec("bowtie:6:5").unwrap().order(), 30);
        assert_eq!(parse_spec("product:cycle4:cycle5").unwrap().size(), 40);
        assert_eq!(parse_spec("product:cycle:6:cycle:5").unwrap().size(), 60);
        assert_eq!(parse_spec("product:P5:C5").unwrap().size(), 45);
        assert_eq!(parse_spec("complete:7").unwrap().size(), 21);
        assert!(parse_spec("bowtie:6").is_err());
        assert!(parse_spec("torus:3").is_err());
    }

    #[test]
    fn matchings_by_name() {
        let g = parse_spec("bowtie:6:5").unwrap();
        let m = load_matching(&g, "h_1-h_2,q_5-q_6,q'_8-q'_9").unwrap();
        assert_eq!(m.len(), 3);
        assert!(load_matching(&g, "h_1-q_3").is_err());
        assert!(load_matching(&g, "x-y").is_err());
    }
}
