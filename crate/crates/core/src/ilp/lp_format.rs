//! CPLEX LP text for integer programs, and a reader for the same subset.
//!
//! Layout written:
//!
//! ```text
//! \ optional comment lines
//! Maximize
//!  obj: 1 z_0 + 1 z_1
//! Subject To
//!  budget: 1 x_PN + 1 x_UP >= 2
//! Bounds
//!  0 <= x_PN <= 1
//! Generals
//!  x_PN x_UP z_0 z_1
//! End
//! ```
//!
//! Every variable is integer with finite bounds, so the reader rejects free
//! or continuous variables.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use super::program::{Constraint, IntegerProgram, Sense, Variable};
use crate::error::{Error, Result};

const TERMS_PER_LINE: usize = 8;

fn sanitize(name: &str) -> String {
    let mut out: String = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' }).collect();
    if out.is_empty() || out.starts_with(|c: char| c.is_ascii_digit()) {
        out.insert(0, 'v');
    }
    out
}

fn unique_names<'a>(names: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = HashSet::new();
    names
        .map(|name| {
            let base = sanitize(name);
            let mut candidate = base.clone();
            let mut k = 2;
            while !seen.insert(candidate.clone()) {
                candidate = format!("{base}_{k}");
                k += 1;
            }
            candidate
        })
        .collect()
}

fn write_terms(out: &mut String, terms: &[(usize, i64)], names: &[String]) {
    for (k, &(i, c)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n  ");
        }
        let sign = if c < 0 { "-" } else { "+" };
        if k == 0 {
            if c < 0 {
                let _ = write!(out, " - {} {}", -c, names[i]);
            } else {
                let _ = write!(out, " {} {}", c, names[i]);
            }
        } else {
            let _ = write!(out, " {sign} {} {}", c.abs(), names[i]);
        }
    }
}

pub fn export_lp(ip: &IntegerProgram) -> String {
    export_lp_annotated(ip, &[])
}

/// Like [`export_lp`], with each entry of `comments` written as a leading
/// `\` line.
pub fn export_lp_annotated(ip: &IntegerProgram, comments: &[String]) -> String {
    let names = unique_names(ip.variables.iter().map(|v| v.name.as_str()));
    let rows = unique_names(ip.constraints.iter().map(|c| c.name.as_str()));
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "\\ {c}");
    }
    out.push_str("Maximize\n obj:");
    write_terms(&mut out, &ip.objective, &names);
    out.push_str("\nSubject To\n");
    for (c, row) in ip.constraints.iter().zip(&rows) {
        let _ = write!(out, " {row}:");
        write_terms(&mut out, &c.terms, &names);
        let _ = writeln!(out, " {} {}", c.sense, c.rhs);
    }
    out.push_str("Bounds\n");
    for (v, name) in ip.variables.iter().zip(&names) {
        if v.lower == v.upper {
            let _ = writeln!(out, " {name} = {}", v.lower);
        } else {
            let _ = writeln!(out, " {} <= {name} <= {}", v.lower, v.upper);
        }
    }
    if !names.is_empty() {
        out.push_str("Generals\n");
        for chunk in names.chunks(TERMS_PER_LINE) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
    }
    out.push_str("End\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Section {
    Preamble,
    Objective,
    Constraints,
    Bounds,
    Generals,
    End,
}

fn section_keyword(line: &str) -> Option<Section> {
    match line.trim().to_ascii_lowercase().as_str() {
        "maximize" | "maximum" | "max" => Some(Section::Objective),
        "subject to" | "such that" | "st" | "s.t." => Some(Section::Constraints),
        "bounds" | "bound" => Some(Section::Bounds),
        "generals" | "general" | "gen" => Some(Section::Generals),
        "end" => Some(Section::End),
        _ => None,
    }
}

type Token<'a> = (usize, &'a str);

fn lp_error(line: usize, message: impl Into<String>) -> Error {
    Error::LpParse { line, message: message.into() }
}

fn parse_number(tok: Token<'_>) -> Result<i64> {
    tok.1.parse().map_err(|_| lp_error(tok.0, format!("expected an integer, found {:?}", tok.1)))
}

fn parse_sense(s: &str) -> Option<Sense> {
    match s {
        "<=" | "=<" | "<" => Some(Sense::Le),
        ">=" | "=>" | ">" => Some(Sense::Ge),
        "=" => Some(Sense::Eq),
        _ => None,
    }
}

struct Reader<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<Token<'a>> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<Token<'a>> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    /// Consumes a `name:` label if one comes next.
    fn label(&mut self) -> Option<&'a str> {
        let (_, tok) = self.peek()?;
        if let Some(name) = tok.strip_suffix(':') {
            self.pos += 1;
            return Some(name);
        }
        if self.tokens.get(self.pos + 1).is_some_and(|t| t.1 == ":") {
            self.pos += 2;
            return Some(tok);
        }
        None
    }

    /// Reads `[sign] [coef] name` terms until a sense operator, a label or
    /// the end of the section.
    fn terms(&mut self, vars: &HashMap<&str, usize>) -> Result<Vec<(usize, i64)>> {
        let mut terms = Vec::new();
        while let Some((line, tok)) = self.peek() {
            if parse_sense(tok).is_some() || tok.ends_with(':') {
                break;
            }
            if self.tokens.get(self.pos + 1).is_some_and(|t| t.1 == ":") {
                break;
            }
            self.pos += 1;
            let mut sign = 1;
            let mut tok = tok;
            if tok == "+" || tok == "-" {
                if tok == "-" {
                    sign = -1;
                }
                tok = self.next().ok_or_else(|| lp_error(line, "dangling sign"))?.1;
            }
            let mut coef = 1;
            if tok.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
                coef = parse_number((line, tok))?;
                tok = self.next().ok_or_else(|| lp_error(line, "coefficient without a variable"))?.1;
            }
            let &var = vars.get(tok).ok_or_else(|| lp_error(line, format!("variable {tok} has no bounds")))?;
            terms.push((var, sign * coef));
        }
        Ok(terms)
    }
}

/// Reads the LP subset produced by [`export_lp`].
///
/// Variables are declared in the order of the Bounds section, which must
/// give every variable finite bounds; every variable must be listed under
/// Generals.
pub fn parse_lp(text: &str) -> Result<IntegerProgram> {
    let mut sections: HashMap<Section, Vec<Token<'_>>> = HashMap::new();
    let mut current = Section::Preamble;
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let body = raw.split('\\').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        if let Some(s) = section_keyword(body) {
            if sections.contains_key(&s) {
                return Err(lp_error(line, "section repeated"));
            }
            sections.insert(s, Vec::new());
            current = s;
            continue;
        }
        match current {
            Section::Preamble => return Err(lp_error(line, "text before the objective section")),
            Section::End => return Err(lp_error(line, "text after End")),
            s => sections.get_mut(&s).expect("section opened").extend(body.split_whitespace().map(|t| (line, t))),
        }
    }
    for (s, name) in [(Section::Objective, "Maximize"), (Section::End, "End")] {
        if !sections.contains_key(&s) {
            return Err(lp_error(last_line, format!("missing {name} section")));
        }
    }

    let mut ip = IntegerProgram::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let bounds = sections.remove(&Section::Bounds).unwrap_or_default();
    let mut k = 0;
    while k < bounds.len() {
        let line = bounds[k].0;
        let row: Vec<&str> = bounds[k..].iter().take_while(|t| t.0 == line).map(|t| t.1).collect();
        k += row.len();
        let (name, lower, upper) = match row.as_slice() {
            [lo, "<=", name, "<=", hi] => (*name, parse_number((line, lo))?, parse_number((line, hi))?),
            [name, "=", v] => {
                let v = parse_number((line, v))?;
                (*name, v, v)
            }
            _ => return Err(lp_error(line, "expected `lo <= name <= hi` or `name = value`")),
        };
        if index.insert(name, ip.variables.len()).is_some() {
            return Err(lp_error(line, format!("variable {name} bounded twice")));
        }
        ip.variables.push(Variable { name: name.to_string(), lower, upper });
    }

    let generals: HashSet<&str> = sections.remove(&Section::Generals).unwrap_or_default().iter().map(|t| t.1).collect();
    for v in &ip.variables {
        if !generals.contains(v.name.as_str()) {
            return Err(lp_error(last_line, format!("variable {} is not declared integer", v.name)));
        }
    }
    if let Some(extra) = generals.iter().find(|g| !index.contains_key(**g)) {
        return Err(lp_error(last_line, format!("variable {extra} has no bounds")));
    }

    let mut obj = Reader { tokens: sections.remove(&Section::Objective).unwrap_or_default(), pos: 0 };
    obj.label();
    ip.objective = obj.terms(&index)?;
    if let Some((line, tok)) = obj.peek() {
        return Err(lp_error(line, format!("unexpected {tok:?} in objective")));
    }

    let mut rows = Reader { tokens: sections.remove(&Section::Constraints).unwrap_or_default(), pos: 0 };
    while let Some((line, _)) = rows.peek() {
        let name = rows.label().ok_or_else(|| lp_error(line, "constraint without a name"))?.to_string();
        let terms = rows.terms(&index)?;
        let (sline, stok) = rows.next().ok_or_else(|| lp_error(line, "constraint without a sense"))?;
        let sense = parse_sense(stok).ok_or_else(|| lp_error(sline, format!("expected a sense, found {stok:?}")))?;
        let mut rhs_tok = rows.next().ok_or_else(|| lp_error(sline, "constraint without a right-hand side"))?;
        let mut sign = 1;
        if rhs_tok.1 == "-" || rhs_tok.1 == "+" {
            sign = if rhs_tok.1 == "-" { -1 } else { 1 };
            rhs_tok = rows.next().ok_or_else(|| lp_error(sline, "dangling sign"))?;
        }
        let rhs = sign * parse_number(rhs_tok)?;
        ip.constraints.push(Constraint { name, terms, sense, rhs });
    }
    ip.validate().map_err(|e| lp_error(last_line, e.to_string()))?;
    Ok(ip)
}
