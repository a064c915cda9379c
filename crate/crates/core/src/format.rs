//! Text formats: the profile file read by the CLI, the solution listing it
//! prints, and a PrefLib strict-order importer.
//!
//! A profile file starts with `m n`, may name the candidates on a
//! `#names:a,b,c` line, and then lists `n` votes as comma-separated candidate
//! indices, most preferred first:
//!
//! ```text
//! 3 2
//! #names:ann,bob,cy
//! 0,1,2
//! 2,1,0
//! ```

use crate::error::{Error, Result};
use crate::model::{Profile, Ranking, ScoredRankingList};

const NAMES_PREFIX: &str = "#names:";

fn parse_usize(line: usize, field: &str, what: &str) -> Result<usize> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {:?}", field.trim())))
}

/// Parses indices into a permutation of `0..m`, reporting problems against `line`.
fn parse_vote(line: usize, fields: &[&str], m: usize, base: usize) -> Result<Ranking> {
    if fields.len() != m {
        return Err(Error::parse(
            line,
            format!("expected {m} candidates, found {}", fields.len()),
        ));
    }
    let mut order = Vec::with_capacity(m);
    for f in fields {
        let c = parse_usize(line, f, "a candidate index")?;
        if c < base || c - base >= m {
            return Err(Error::parse(line, format!("candidate {c} out of range")));
        }
        order.push(c - base);
    }
    Ranking::new(order).map_err(|e| match e {
        Error::Structural(msg) => Error::parse(line, msg),
        other => other,
    })
}

pub fn parse_profile(text: &str) -> Result<Profile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected \"m n\""))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(Error::parse(1, format!("expected \"m n\", found {header:?}")));
    }
    let m = parse_usize(1, dims[0], "candidate count m")?;
    let n = parse_usize(1, dims[1], "vote count n")?;
    if m == 0 || n == 0 {
        return Err(Error::parse(1, "m and n must be positive"));
    }

    let mut labels = None;
    let mut votes = Vec::with_capacity(n);
    let mut last_line = 1;
    for (no, line) in lines {
        last_line = no;
        if votes.is_empty() && labels.is_none() {
            if let Some(rest) = line.strip_prefix(NAMES_PREFIX) {
                let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
                if names.len() != m {
                    return Err(Error::parse(
                        no,
                        format!("expected {m} names, found {}", names.len()),
                    ));
                }
                labels = Some(names);
                continue;
            }
        }
        if line.trim().is_empty() {
            if votes.len() == n {
                continue;
            }
            return Err(Error::parse(no, "blank line where a vote was expected"));
        }
        if votes.len() == n {
            return Err(Error::parse(no, format!("more than the declared {n} votes")));
        }
        let fields: Vec<&str> = line.split(',').collect();
        votes.push(parse_vote(no, &fields, m, 0)?);
    }
    if votes.len() != n {
        return Err(Error::parse(
            last_line,
            format!("declared {n} votes, found {}", votes.len()),
        ));
    }
    let profile = Profile::new(m, votes)?;
    match labels {
        Some(l) => profile.with_labels(l).map_err(|e| match e {
            Error::Structural(msg) => Error::parse(2, msg),
            other => other,
        }),
        None => Ok(profile),
    }
}

pub fn emit_profile(profile: &Profile) -> String {
    let mut out = format!("{} {}\n", profile.m(), profile.n());
    if let Some(labels) = profile.labels() {
        out.push_str(NAMES_PREFIX);
        out.push_str(&labels.join(","));
        out.push('\n');
    }
    for v in profile.votes() {
        let fields: Vec<String> = v.order().iter().map(|c| c.to_string()).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// One `score<TAB>a>b>c` line per ranking, using labels when the profile has them.
pub fn emit_solution(profile: &Profile, rankings: &ScoredRankingList) -> String {
    let mut out = String::new();
    for e in rankings {
        let names: Vec<String> = e.ranking.order().iter().map(|&c| profile.label(c)).collect();
        out.push_str(&format!("{}\t{}\n", e.score, names.join(">")));
    }
    out
}

/// Reads a PrefLib strict-order-complete (`.soc`) file, in either the current
/// `# KEY: value` header layout or the older numeric header layout.
/// Alternatives are renumbered from 1-based to 0-based; names become labels
/// with separator characters replaced by `_`.
pub fn import_preflib(text: &str) -> Result<Profile> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(&(_, first)) = lines.first() else {
        return Err(Error::parse(1, "empty PrefLib file"));
    };
    let (m, names, data) = if first.starts_with('#') {
        modern_header(&lines)?
    } else {
        legacy_header(&lines)?
    };

    let mut votes = Vec::new();
    for &(no, line) in data {
        if line.contains('{') {
            return Err(Error::parse(no, "tied alternatives are not supported"));
        }
        let (count, order) = match line.split_once(':') {
            Some((c, rest)) => (c, rest.split(',').collect::<Vec<_>>()),
            None => {
                let mut f = line.split(',');
                let c = f.next().unwrap_or("");
                (c, f.collect())
            }
        };
        let count = parse_usize(no, count, "a vote count")?;
        let vote = parse_vote(no, &order, m, 1)?;
        votes.extend(std::iter::repeat_n(vote, count));
    }
    if votes.is_empty() {
        return Err(Error::parse(lines.last().map_or(1, |l| l.0), "no votes"));
    }
    let profile = Profile::new(m, votes)?;
    let labels: Vec<String> = names
        .into_iter()
        .enumerate()
        .map(|(i, n)| {
            let n: String = n
                .chars()
                .map(|c| if matches!(c, ',' | '>' | '\t') { '_' } else { c })
                .collect();
            if n.is_empty() {
                (i + 1).to_string()
            } else {
                n
            }
        })
        .collect();
    profile.with_labels(labels)
}

type Header<'a, 'b> = (usize, Vec<String>, &'b [(usize, &'a str)]);

fn modern_header<'a, 'b>(lines: &'b [(usize, &'a str)]) -> Result<Header<'a, 'b>> {
    let split = lines.iter().position(|(_, l)| !l.starts_with('#')).unwrap_or(lines.len());
    let mut m = None;
    let mut names: Vec<(usize, String)> = Vec::new();
    for &(no, line) in &lines[..split] {
        let Some((key, value)) = line.trim_start_matches('#').split_once(':') else {
            continue;
        };
        let key = key.trim();
        if key == "NUMBER ALTERNATIVES" {
            m = Some(parse_usize(no, value, "the number of alternatives")?);
        } else if let Some(idx) = key.strip_prefix("ALTERNATIVE NAME ") {
            names.push((parse_usize(no, idx, "an alternative number")?, value.trim().to_string()));
        }
    }
    let m = m.ok_or_else(|| Error::parse(1, "missing \"# NUMBER ALTERNATIVES\" header"))?;
    let mut labels: Vec<String> = vec![String::new(); m];
    for (i, name) in names {
        if (1..=m).contains(&i) {
            labels[i - 1] = name;
        }
    }
    Ok((m, labels, &lines[split..]))
}

fn legacy_header<'a, 'b>(lines: &'b [(usize, &'a str)]) -> Result<Header<'a, 'b>> {
    let (no, first) = lines[0];
    let m = parse_usize(no, first, "the number of alternatives")?;
    if lines.len() < m + 2 {
        return Err(Error::parse(no, "truncated PrefLib header"));
    }
    let mut labels = Vec::with_capacity(m);
    for &(no, line) in &lines[1..=m] {
        let (idx, name) = line
            .split_once(',')
            .ok_or_else(|| Error::parse(no, "expected \"index,name\""))?;
        let idx = parse_usize(no, idx, "an alternative number")?;
        if idx != labels.len() + 1 {
            return Err(Error::parse(no, format!("alternative {idx} out of order")));
        }
        labels.push(name.trim().to_string());
    }
    // the voter summary line carries nothing the vote lines do not
    Ok((m, labels, &lines[m + 2..]))
}
