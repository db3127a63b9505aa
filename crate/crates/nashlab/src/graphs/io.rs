//! Line-oriented instance text format.
//!
//! Header `eol v1 kind=<kind> n=<n> [d=<d>]`, then either per-vertex
//! `succ <label> <label|NULL>` / `pred <label> <label|NULL>` pairs for the
//! complete host, or `e <tail-label> <head-label> <slot> <0|1>` lines in
//! canonical order. Writing and re-reading is bit-exact.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::butterfly::{build_double_butterfly, multiply_edges};
use super::replacement::replacement_product;
use super::{EolInput, EolInstance, GraphKind, Label, LabeledHostGraph};

pub fn write_instance(inst: &EolInstance) -> String {
    let host = &inst.host;
    let mut out = String::new();
    let kind = host.kind.token();
    match host.kind {
        GraphKind::ButterflyMulti { d } | GraphKind::ReplacementProduct { d } => {
            out.push_str(&format!("eol v1 kind={kind} n={} d={d}\n", host.n));
        }
        GraphKind::CompleteWithPointers => {
            out.push_str(&format!(
                "eol v1 kind={kind} n={} N={}\n",
                host.label_bits(),
                host.vertex_count()
            ));
        }
        GraphKind::ButterflyDouble => {
            out.push_str(&format!("eol v1 kind={kind} n={}\n", host.n));
        }
    }
    match &inst.input {
        EolInput::Pointers { succ, pred } => {
            let null = "NULL".to_string();
            for v in 0..host.vertex_count() {
                let vl = host.label(v as u32);
                let s = succ[v].map_or(null.clone(), |u| host.label(u).to_string());
                let p = pred[v].map_or(null.clone(), |u| host.label(u).to_string());
                out.push_str(&format!("succ {vl} {s}\n"));
                out.push_str(&format!("pred {vl} {p}\n"));
            }
        }
        EolInput::Indicators(bits) => {
            for (e, b) in host.edges().iter().zip(bits) {
                out.push_str(&format!(
                    "e {} {} {} {}\n",
                    host.label(e.tail),
                    host.label(e.head),
                    e.slot,
                    if *b { 1 } else { 0 }
                ));
            }
        }
    }
    out
}

fn header_field<'a>(tokens: &[&'a str], key: &str) -> Option<&'a str> {
    tokens
        .iter()
        .find_map(|t| t.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

pub fn read_instance(text: &str) -> Result<EolInstance> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty instance file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() < 3 || tokens[0] != "eol" || tokens[1] != "v1" {
        return Err(Error::parse(1, "expected `eol v1` header"));
    }
    let kind = header_field(&tokens, "kind").ok_or_else(|| Error::parse(1, "missing kind"))?;
    let n: u32 = header_field(&tokens, "n")
        .ok_or_else(|| Error::parse(1, "missing n"))?
        .parse()
        .map_err(|_| Error::parse(1, "bad n"))?;
    let host = match kind {
        "complete-with-pointers" => {
            let cap: usize = header_field(&tokens, "N")
                .ok_or_else(|| Error::parse(1, "missing N"))?
                .parse()
                .map_err(|_| Error::parse(1, "bad N"))?;
            Arc::new(LabeledHostGraph::complete(cap)?)
        }
        "butterfly-double" => Arc::new(build_double_butterfly(n)?),
        "butterfly-multigraph" => {
            let d: u32 = header_field(&tokens, "d")
                .ok_or_else(|| Error::parse(1, "missing d"))?
                .parse()
                .map_err(|_| Error::parse(1, "bad d"))?;
            let h = build_double_butterfly(n)?;
            Arc::new(multiply_edges(&h, d)?)
        }
        "replacement-product" => {
            let d: u32 = header_field(&tokens, "d")
                .ok_or_else(|| Error::parse(1, "missing d"))?
                .parse()
                .map_err(|_| Error::parse(1, "bad d"))?;
            let h = build_double_butterfly(n)?;
            let hd = multiply_edges(&h, d)?;
            Arc::new(replacement_product(&hd)?)
        }
        other => return Err(Error::parse(1, format!("unknown kind `{other}`"))),
    };

    if host.kind == GraphKind::CompleteWithPointers {
        let mut succ = vec![None; host.vertex_count()];
        let mut pred = vec![None; host.vertex_count()];
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 || (parts[0] != "succ" && parts[0] != "pred") {
                return Err(Error::parse(idx + 1, "expected `succ|pred <label> <label|NULL>`"));
            }
            let v = host
                .vertex_by_label(&Label::parse(parts[1])?)
                .ok_or_else(|| Error::parse(idx + 1, "unknown vertex label"))?;
            let target = if parts[2] == "NULL" {
                None
            } else {
                Some(
                    host.vertex_by_label(&Label::parse(parts[2])?)
                        .ok_or_else(|| Error::parse(idx + 1, "unknown target label"))?,
                )
            };
            if parts[0] == "succ" {
                succ[v as usize] = target;
            } else {
                pred[v as usize] = target;
            }
        }
        EolInstance::from_pointers(host, succ, pred)
    } else {
        let mut bits = Vec::with_capacity(host.edge_count());
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 5 || parts[0] != "e" {
                return Err(Error::parse(idx + 1, "expected `e <tail> <head> <slot> <bit>`"));
            }
            let i = bits.len();
            if i >= host.edge_count() {
                return Err(Error::parse(idx + 1, "too many edge lines"));
            }
            let e = &host.edges()[i];
            let tail = Label::parse(parts[1])?;
            let head = Label::parse(parts[2])?;
            let slot: u32 = parts[3].parse().map_err(|_| Error::parse(idx + 1, "bad slot"))?;
            if host.label(e.tail) != tail || host.label(e.head) != head || e.slot != slot {
                return Err(Error::parse(
                    idx + 1,
                    "edge line deviates from canonical host order",
                ));
            }
            bits.push(match parts[4] {
                "0" => false,
                "1" => true,
                _ => return Err(Error::parse(idx + 1, "indicator must be 0 or 1")),
            });
        }
        if bits.len() != host.edge_count() {
            return Err(Error::parse(0, "missing edge lines"));
        }
        EolInstance::from_indicators(host, bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointer_instance_roundtrips_bit_exactly() {
        let host = Arc::new(LabeledHostGraph::complete(6).unwrap());
        let succ = vec![Some(3), None, Some(1), Some(2), Some(5), None];
        let pred = vec![None, Some(2), Some(3), Some(0), None, Some(4)];
        let inst = EolInstance::from_pointers(host, succ, pred).unwrap();
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        assert_eq!(write_instance(&back), text);
        assert_eq!(back.input, inst.input);
    }

    #[test]
    fn indicator_instance_roundtrips_bit_exactly() {
        let host = Arc::new(build_double_butterfly(2).unwrap());
        let bits: Vec<bool> = (0..host.edge_count()).map(|i| i % 3 == 0).collect();
        let inst = EolInstance::from_indicators(host, bits).unwrap();
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        assert_eq!(write_instance(&back), text);
        assert_eq!(back.input, inst.input);
    }
}
