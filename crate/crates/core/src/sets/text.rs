//! Text forms of set descriptions.
//!
//! ```text
//! finite:1,2,3            explicit elements (may be empty)
//! periodic:p=6;r=1,5;t=0  {m >= t : m mod p ∈ r}, optional pre=… prefix
//! nat | evens | odds
//! pow:2                   powers of 2
//! poly:a,d,c              a·n^d + c
//! fact                    factorials
//! gaps:1,4,2              0 followed by the gaps repeated
//! facint                  ⋃ [n!, n!+n] for n >= 2
//! union:(…);(…)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{join, IntervalFamily, Periodic, SetSpec};
use crate::error::{Error, Result};

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn parse_list(text: &str, offset: usize) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for item in text.split(',') {
        let trimmed = item.trim();
        if trimmed.is_empty() {
            if text.trim().is_empty() {
                break;
            }
            return Err(syntax(pos, "empty list item"));
        }
        out.push(
            trimmed
                .parse()
                .map_err(|_| syntax(pos, format!("{trimmed:?} is not a natural number")))?,
        );
        pos += item.len() + 1;
    }
    Ok(out)
}

fn parse_nat(text: &str, offset: usize) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| syntax(offset, format!("{:?} is not a natural number", text.trim())))
}

/// Splits `(a);(b);…` at top-level semicolons and strips the parentheses.
fn split_union(text: &str, offset: usize) -> Result<Vec<(usize, &str)>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| syntax(offset + i, "unbalanced ')'"))?;
            }
            ';' if depth == 0 => {
                parts.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(syntax(offset + text.len(), "expected ')'"));
    }
    parts.push((start, &text[start..]));
    parts
        .into_iter()
        .map(|(at, part)| {
            let trimmed = part.trim();
            let lead = part.len() - part.trim_start().len();
            match trimmed.strip_prefix('(').and_then(|p| p.strip_suffix(')')) {
                Some(inner) => Ok((offset + at + lead + 1, inner)),
                None => Err(syntax(offset + at + lead, "union members must be parenthesized")),
            }
        })
        .collect()
}

fn parse_at(text: &str, offset: usize) -> Result<SetSpec> {
    let trimmed = text.trim();
    let offset = offset + (text.len() - text.trim_start().len());
    let (head, body, body_at) = match trimmed.split_once(':') {
        Some((h, b)) => (h, Some(b), offset + h.len() + 1),
        None => (trimmed, None, offset + trimmed.len()),
    };
    let need_body = || body.ok_or_else(|| syntax(body_at, format!("{head} needs ':' and arguments")));
    match head {
        "nat" => Ok(SetSpec::naturals()),
        "evens" => Ok(SetSpec::evens()),
        "odds" => Ok(SetSpec::odds()),
        "facint" => Ok(SetSpec::factorial_intervals()),
        "fact" => match body {
            None => Ok(SetSpec::factorials()),
            Some(b) => Ok(SetSpec::Stream {
                seq: super::Sequence::factorials_from(parse_nat(b, body_at)?.max(1)),
                gaps: super::GrowthClass::Divergent,
            }),
        },
        "finite" => Ok(SetSpec::finite(parse_list(need_body()?, body_at)?)),
        "pow" => SetSpec::powers(parse_nat(need_body()?, body_at)?),
        "poly" => match parse_list(need_body()?, body_at)?[..] {
            [a, d, c] => {
                let d = u32::try_from(d).map_err(|_| syntax(body_at, "degree too large"))?;
                SetSpec::polynomial(a, d, c)
            }
            _ => Err(syntax(body_at, "poly expects a,d,c")),
        },
        "gaps" => SetSpec::cyclic_gaps(parse_list(need_body()?, body_at)?),
        "periodic" => parse_periodic(need_body()?, body_at),
        "union" => {
            let members = split_union(need_body()?, body_at)?
                .into_iter()
                .map(|(at, inner)| parse_at(inner, at))
                .collect::<Result<Vec<_>>>()?;
            Ok(SetSpec::Union(members))
        }
        other => Err(syntax(offset, format!("unknown set form {other:?}"))),
    }
}

fn parse_periodic(body: &str, offset: usize) -> Result<SetSpec> {
    let mut period = None;
    let mut residues = BTreeSet::new();
    let mut threshold = 0;
    let mut prefix = BTreeSet::new();
    let mut at = offset;
    for field in body.split(';') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| syntax(at, "expected key=value"))?;
        let value_at = at + key.len() + 1;
        match key.trim() {
            "p" => period = Some(parse_nat(value, value_at)?),
            "r" => residues = parse_list(value, value_at)?.into_iter().collect(),
            "t" => threshold = parse_nat(value, value_at)?,
            "pre" => prefix = parse_list(value, value_at)?.into_iter().collect(),
            other => return Err(syntax(at, format!("unknown periodic key {other:?}"))),
        }
        at += field.len() + 1;
    }
    let period = period.ok_or_else(|| syntax(offset, "periodic needs p=<period>"))?;
    Ok(SetSpec::Periodic(Periodic::new(prefix, threshold, period, residues)?))
}

impl FromStr for SetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_at(s, 0)
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::Finite(s) => write!(f, "finite:{}", join(&s.iter().copied().collect::<Vec<_>>())),
            SetSpec::Periodic(p) => {
                let residues: Vec<u64> = p.residues.iter().copied().collect();
                write!(f, "periodic:p={};r={};t={}", p.period, join(&residues), p.threshold)?;
                if !p.prefix.is_empty() {
                    write!(f, ";pre={}", join(&p.prefix.iter().copied().collect::<Vec<_>>()))?;
                }
                Ok(())
            }
            SetSpec::Stream { seq, .. } if seq.label() == "fact:1" => f.write_str("fact"),
            SetSpec::Stream { seq, .. } => f.write_str(seq.label()),
            SetSpec::Intervals(_) if *self == SetSpec::factorial_intervals() => f.write_str("facint"),
            SetSpec::Intervals(IntervalFamily {
                starts,
                lengths,
                length_class,
                hole_class,
            }) => write!(
                f,
                "intervals(starts={}, lengths={}, lengths {length_class}, holes {hole_class})",
                starts.label(),
                lengths.label()
            ),
            SetSpec::Union(members) => {
                f.write_str("union:")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "({m})")?;
                }
                Ok(())
            }
        }
    }
}
