//! The manifold-spec text format.
//!
//! ```text
//! # comment lines start with '#'
//! dim = 4
//! d e4 = e12            # general terms: "-2 e13 + 1/3 e24"
//! # or shorthand:  structure = (0,0,0,12)
//! omega = e14 + e23
//! J = rows [ [0,0,0,-1], [0,0,-1,0], [0,1,0,0], [1,0,0,0] ]
//! metric = identity
//! ```
//!
//! `dim` is required, even, 2..=8. Differentials come either from explicit
//! `d e<m> = ...` lines or from one `structure = (...)` shorthand, never
//! both; omitting both gives the torus. `omega` is required; `J` is optional
//! (derived from the metric and omega when absent); `metric` defaults to the
//! identity. Rational literals are `p`, `-p`, `p/q`. Salamon entries such as
//! `42` are accepted with the orientation sign (`e42 = -e24`).

use crate::error::{Error, ParseDiagnostic};
use crate::exterior::Form;
use crate::linalg::Matrix;
use crate::model::{LieModel, MAX_DIM, MIN_DIM};
use crate::rational::{fmt_rational, parse_rational, Rational};
use num_traits::One;

#[derive(Debug, Clone, PartialEq)]
pub enum MetricDecl {
    Identity,
    Explicit(Matrix),
}

/// Parsed, semantically checked contents of one manifold file.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldSpec {
    pub dim2n: usize,
    pub d_on_coframe: Vec<Form>,
    pub omega: Form,
    pub j_frame: Option<Matrix>,
    pub metric: MetricDecl,
}

impl ManifoldSpec {
    pub fn parse(text: &str) -> Result<Self, Error> {
        Parser::new(text).run()
    }

    pub fn build_model(&self) -> Result<LieModel, Error> {
        LieModel::new(self.dim2n, self.d_on_coframe.clone())
    }

    pub fn metric_matrix(&self) -> Matrix {
        match &self.metric {
            MetricDecl::Identity => Matrix::identity(self.dim2n),
            MetricDecl::Explicit(m) => m.clone(),
        }
    }

    /// Canonical printer; `parse(to_text(spec)) == spec`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dim = {}\n", self.dim2n));
        for (m, form) in self.d_on_coframe.iter().enumerate() {
            if !form.is_zero() {
                out.push_str(&format!("d e{} = {}\n", m + 1, form));
            }
        }
        out.push_str(&format!("omega = {}\n", self.omega));
        if let Some(j) = &self.j_frame {
            out.push_str(&format!("J = rows {}\n", rows_text(j)));
        }
        match &self.metric {
            MetricDecl::Identity => out.push_str("metric = identity\n"),
            MetricDecl::Explicit(g) => out.push_str(&format!("metric = rows {}\n", rows_text(g))),
        }
        out
    }
}

fn rows_text(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let entries: Vec<String> = (0..m.cols()).map(|c| fmt_rational(m.get(r, c))).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("[ {} ]", rows.join(", "))
}

struct Parser<'a> {
    text: &'a str,
    diagnostics: Vec<ParseDiagnostic>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            diagnostics: Vec::new(),
        }
    }

    fn report(&mut self, line: usize, message: impl Into<String>) {
        self.diagnostics.push(ParseDiagnostic {
            line,
            message: message.into(),
        });
    }

    fn run(mut self) -> Result<ManifoldSpec, Error> {
        // (line number, content) with comments stripped
        let lines: Vec<(usize, String)> = self
            .text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("").trim().to_string();
                if content.is_empty() {
                    None
                } else {
                    Some((i + 1, content))
                }
            })
            .collect();

        // pass 1: dim
        let mut dim: Option<(usize, usize)> = None; // (line, value)
        for (no, content) in &lines {
            if let Some(rest) = key_value(content, "dim") {
                if dim.is_some() {
                    self.report(*no, "duplicate declaration of `dim`");
                    continue;
                }
                match rest.parse::<usize>() {
                    Ok(v) if v % 2 != 0 => self.report(*no, format!("odd dimension {v}")),
                    Ok(v) if !(MIN_DIM..=MAX_DIM).contains(&v) => self.report(
                        *no,
                        format!("dimension {v} out of supported range {MIN_DIM}..={MAX_DIM}"),
                    ),
                    Ok(v) => dim = Some((*no, v)),
                    Err(_) => self.report(*no, format!("invalid dimension `{rest}`")),
                }
            }
        }
        let Some((_, dim2n)) = dim else {
            if self.diagnostics.is_empty() {
                self.report(1, "missing required declaration `dim = <even>`");
            }
            return Err(Error::Parse(self.diagnostics));
        };

        // pass 2: everything else
        let mut d_lines: Vec<(usize, usize, Form)> = Vec::new(); // (line, m, form)
        let mut structure: Option<(usize, Vec<Form>)> = None;
        let mut omega: Option<(usize, Form)> = None;
        let mut j_frame: Option<(usize, Matrix)> = None;
        let mut metric: Option<(usize, MetricDecl)> = None;

        for (no, content) in &lines {
            let no = *no;
            if key_value(content, "dim").is_some() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("d ") {
                let Some((lhs, rhs)) = rest.split_once('=') else {
                    self.report(no, "expected `d e<m> = <2-form>`");
                    continue;
                };
                let lhs = lhs.trim();
                let Some(m) = lhs
                    .strip_prefix('e')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&m| (1..=dim2n).contains(&m))
                else {
                    self.report(no, format!("invalid coframe element `{lhs}`"));
                    continue;
                };
                if d_lines.iter().any(|(_, seen, _)| *seen == m) {
                    self.report(no, format!("duplicate declaration of `d e{m}`"));
                    continue;
                }
                match parse_form_expr(rhs, dim2n, 2) {
                    Ok(form) => d_lines.push((no, m, form)),
                    Err(msg) => self.report(no, msg),
                }
            } else if let Some(rest) = key_value(content, "structure") {
                if structure.is_some() {
                    self.report(no, "duplicate declaration of `structure`");
                    continue;
                }
                match parse_structure(rest, dim2n) {
                    Ok(forms) => structure = Some((no, forms)),
                    Err(msg) => self.report(no, msg),
                }
            } else if let Some(rest) = key_value(content, "omega") {
                if omega.is_some() {
                    self.report(no, "duplicate declaration of `omega`");
                    continue;
                }
                match parse_form_expr(rest, dim2n, 2) {
                    Ok(form) => omega = Some((no, form)),
                    Err(msg) => self.report(no, msg),
                }
            } else if let Some(rest) = key_value(content, "J") {
                if j_frame.is_some() {
                    self.report(no, "duplicate declaration of `J`");
                    continue;
                }
                match parse_rows_matrix(rest, dim2n) {
                    Ok(m) => j_frame = Some((no, m)),
                    Err(msg) => self.report(no, msg),
                }
            } else if let Some(rest) = key_value(content, "metric") {
                if metric.is_some() {
                    self.report(no, "duplicate declaration of `metric`");
                    continue;
                }
                if rest == "identity" {
                    metric = Some((no, MetricDecl::Identity));
                } else if let Some(rows) = rest.strip_prefix("rows") {
                    match parse_rows_matrix_body(rows, dim2n) {
                        Ok(m) => metric = Some((no, MetricDecl::Explicit(m))),
                        Err(msg) => self.report(no, msg),
                    }
                } else {
                    self.report(no, "expected `metric = identity` or `metric = rows [ .. ]`");
                }
            } else {
                self.report(no, format!("unknown declaration `{content}`"));
            }
        }

        if let (Some((_, _, _)), Some((line, _))) = (d_lines.first(), &structure) {
            self.report(
                *line,
                "`structure` shorthand conflicts with explicit `d e<m>` lines",
            );
        }
        if omega.is_none() {
            self.report(1, "missing required declaration `omega = <2-form>`");
        }
        if !self.diagnostics.is_empty() {
            return Err(Error::Parse(self.diagnostics));
        }

        let d_on_coframe = if let Some((_, forms)) = structure {
            forms
        } else {
            let mut forms = vec![Form::zero(dim2n, 2); dim2n];
            for (_, m, form) in d_lines {
                forms[m - 1] = form;
            }
            forms
        };

        Ok(ManifoldSpec {
            dim2n,
            d_on_coframe,
            omega: omega.expect("checked above").1,
            j_frame: j_frame.map(|(_, m)| m),
            metric: metric.map_or(MetricDecl::Identity, |(_, m)| m),
        })
    }
}

fn key_value<'b>(content: &'b str, key: &str) -> Option<&'b str> {
    let rest = content.strip_prefix(key)?;
    let rest = rest.trim_start();
    let rest = rest.strip_prefix('=')?;
    Some(rest.trim())
}

/// Splits `a + b - c` into signed term strings.
fn signed_terms(expr: &str) -> Vec<(i8, String)> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1i8;
    let mut seen_any = false;
    for ch in expr.chars() {
        match ch {
            '+' | '-' if seen_any && !current.trim().is_empty() => {
                terms.push((sign, current.trim().to_string()));
                current = String::new();
                sign = if ch == '-' { -1 } else { 1 };
            }
            '-' if current.trim().is_empty() => {
                sign = -sign;
                seen_any = true;
            }
            '+' if current.trim().is_empty() => {
                seen_any = true;
            }
            _ => {
                current.push(ch);
                seen_any = true;
            }
        }
    }
    if !current.trim().is_empty() {
        terms.push((sign, current.trim().to_string()));
    }
    terms
}

/// One monomial with optional coefficient: `e13`, `2 e13`, `1/3 24`, `13`.
fn parse_term(term: &str, dim2n: usize, degree: usize) -> Result<(Rational, Vec<u8>), String> {
    let tokens: Vec<&str> = term.split_whitespace().collect();
    let (coeff_str, mono): (Option<&str>, &str) = match tokens.as_slice() {
        [single] => {
            // compact form "2e13" splits at the first 'e'
            if let Some(pos) = single.find('e') {
                if pos == 0 {
                    (None, *single)
                } else {
                    (Some(&single[..pos]), &single[pos..])
                }
            } else {
                (None, *single)
            }
        }
        [coeff, mono] => (Some(*coeff), *mono),
        _ => return Err(format!("cannot parse term `{term}`")),
    };
    let coeff = match coeff_str {
        None | Some("") => Rational::one(),
        Some(s) => parse_rational(s)?,
    };
    let digits = mono.strip_prefix('e').unwrap_or(mono);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("invalid basis monomial `{mono}`"));
    }
    let indices: Vec<u8> = digits
        .chars()
        .map(|c| c.to_digit(10).unwrap() as u8)
        .collect();
    for &i in &indices {
        if i == 0 || i as usize > dim2n {
            return Err(format!("coframe index {i} out of range 1..={dim2n}"));
        }
    }
    let mut sorted = indices.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(format!("repeated index in monomial `{mono}`"));
    }
    if indices.len() != degree {
        return Err(format!(
            "expected a degree-{degree} monomial, `{mono}` has degree {}",
            indices.len()
        ));
    }
    Ok((coeff, indices))
}

fn parse_form_expr(expr: &str, dim2n: usize, degree: usize) -> Result<Form, String> {
    let expr = expr.trim();
    if expr == "0" {
        return Ok(Form::zero(dim2n, degree));
    }
    let mut terms = Vec::new();
    for (sign, term) in signed_terms(expr) {
        let (coeff, indices) = parse_term(&term, dim2n, degree)?;
        let coeff = if sign < 0 { -coeff } else { coeff };
        terms.push((coeff, indices));
    }
    if terms.is_empty() {
        return Err("empty form expression".to_string());
    }
    Ok(Form::from_terms(dim2n, degree, &terms))
}

/// Salamon shorthand `(0,0,0,12)`; entry `m` is `d e<m>`.
fn parse_structure(rest: &str, dim2n: usize) -> Result<Vec<Form>, String> {
    let body = rest
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or("expected `structure = ( ... )`")?;
    let entries: Vec<&str> = body.split(',').collect();
    if entries.len() != dim2n {
        return Err(format!(
            "structure shorthand has {} entries, expected {dim2n}",
            entries.len()
        ));
    }
    entries
        .iter()
        .map(|entry| parse_form_expr(entry, dim2n, 2))
        .collect()
}

fn parse_rows_matrix(rest: &str, dim2n: usize) -> Result<Matrix, String> {
    let body = rest
        .strip_prefix("rows")
        .ok_or("expected `rows [ [..], .. ]`")?;
    parse_rows_matrix_body(body, dim2n)
}

fn parse_rows_matrix_body(body: &str, dim2n: usize) -> Result<Matrix, String> {
    let body = body.trim();
    let inner = body
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or("expected `rows [ [..], .. ]` on one line")?;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let start = rest.find('[').ok_or("expected `[` starting a matrix row")?;
        let end = rest[start..]
            .find(']')
            .map(|e| start + e)
            .ok_or("unterminated matrix row")?;
        let row_body = &rest[start + 1..end];
        let row: Result<Vec<Rational>, String> = row_body
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect();
        rows.push(row?);
        rest = rest[end + 1..].trim_start_matches([',', ' ']).trim();
    }
    if rows.len() != dim2n || rows.iter().any(|r| r.len() != dim2n) {
        return Err(format!("expected a {dim2n}x{dim2n} matrix"));
    }
    Ok(Matrix::from_rows(rows))
}
