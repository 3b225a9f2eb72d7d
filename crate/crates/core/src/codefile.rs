//! The flat-file interchange format for generator matrices.
//!
//! ```text
//! # comments run to end of line
//! q 2
//! n 4
//! k 4
//! c 1            # optional declared entanglement
//! d 3            # optional declared distance
//! entries unbounded   # optional: keep entries as exact integers
//! 0 1 0 0 | 1 0 1 0
//! ...
//! ```
//!
//! Body rows are `2n` integers with an optional `|` between the halves, or
//! alternatively one Pauli token per register (`I`, `X^aZ^b`, ...). Printed
//! matrices paste in directly. `parse(format(x))` is the identity.

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::modular::PrimeModulus;
use crate::pauli::{parse_pauli_string, tokens_with_columns};

#[derive(Default)]
struct Header {
    q: Option<(u64, usize)>,
    n: Option<(u64, usize)>,
    k: Option<(u64, usize)>,
    c: Option<u64>,
    d: Option<u64>,
    unbounded: bool,
}

pub fn parse_code_file(text: &str) -> Result<CodeSpec> {
    let mut header = Header::default();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut in_body = false;
    let mut body_lines = 0usize;

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens = tokens_with_columns(line);
        if tokens.is_empty() {
            continue;
        }
        let is_header = !in_body && matches!(tokens[0].1, "q" | "n" | "k" | "c" | "d" | "entries");
        if is_header {
            parse_header_line(&mut header, &tokens, line_no)?;
            continue;
        }
        if !in_body {
            validate_header(&header, line_no)?;
            in_body = true;
        }
        body_lines += 1;
        let (k, k_line) = header.k.expect("validated above");
        if body_lines > k as usize {
            return Err(Error::HeaderMismatch(format!(
                "more than k = {k} rows (k declared on line {k_line})"
            )));
        }
        rows.push(parse_row(&header, &tokens, line, line_no)?);
    }

    validate_header(&header, text.lines().count().max(1))?;
    let (q, _) = header.q.expect("validated");
    let (n, _) = header.n.expect("validated");
    let (k, _) = header.k.expect("validated");
    if rows.len() != k as usize {
        return Err(Error::HeaderMismatch(format!(
            "k = {k} but found {} rows",
            rows.len()
        )));
    }
    let q = PrimeModulus::new(q)?;
    let code = if header.unbounded {
        CodeSpec::new_unbounded(q, n as usize, rows)?
    } else {
        CodeSpec::new(q, n as usize, rows)?
    };
    Ok(code.with_declared(header.c, header.d))
}

fn parse_header_line(header: &mut Header, tokens: &[(usize, &str)], line: usize) -> Result<()> {
    let syntax = |column: usize, message: String| Error::SyntaxError {
        line,
        column,
        message,
    };
    let key = tokens[0].1;
    if tokens.len() != 2 {
        return Err(syntax(
            tokens[0].0,
            format!("header line `{key}` takes exactly one value"),
        ));
    }
    let (vcol, vtok) = tokens[1];
    if key == "entries" {
        if vtok != "unbounded" {
            return Err(syntax(vcol, format!("unknown entries mode `{vtok}`")));
        }
        header.unbounded = true;
        return Ok(());
    }
    let value: u64 = vtok
        .parse()
        .map_err(|_| syntax(vcol, format!("`{vtok}` is not a non-negative integer")))?;
    match key {
        "q" => header.q = Some((value, line)),
        "n" => header.n = Some((value, line)),
        "k" => header.k = Some((value, line)),
        "c" => header.c = Some(value),
        "d" => header.d = Some(value),
        _ => unreachable!("caller matched the key"),
    }
    Ok(())
}

fn validate_header(header: &Header, line: usize) -> Result<()> {
    let syntax = |message: String| Error::SyntaxError {
        line,
        column: 1,
        message,
    };
    let Some((q, _)) = header.q else {
        return Err(syntax("missing header `q`".into()));
    };
    let Some((n, _)) = header.n else {
        return Err(syntax("missing header `n`".into()));
    };
    let Some((k, k_line)) = header.k else {
        return Err(syntax("missing header `k`".into()));
    };
    if q < 2 {
        return Err(Error::NonPrimeModulus(q));
    }
    if n == 0 {
        return Err(syntax("n must be positive".into()));
    }
    if k == 0 {
        return Err(Error::SyntaxError {
            line: k_line,
            column: 1,
            message: "k must be positive".into(),
        });
    }
    if k > 2 * n {
        return Err(Error::HeaderMismatch(format!(
            "k = {k} exceeds 2n = {}",
            2 * n
        )));
    }
    Ok(())
}

fn parse_row(
    header: &Header,
    tokens: &[(usize, &str)],
    line_text: &str,
    line: usize,
) -> Result<Vec<i64>> {
    let n = header.n.expect("validated").0 as usize;
    let first = tokens[0].1;
    let numeric = first
        .chars()
        .next()
        .is_some_and(|ch| ch.is_ascii_digit() || ch == '-');
    if numeric {
        let mut row = Vec::with_capacity(2 * n);
        for &(col, tok) in tokens {
            if tok == "|" {
                continue;
            }
            let v: i64 = tok.parse().map_err(|_| Error::SyntaxError {
                line,
                column: col,
                message: format!("`{tok}` is not an integer"),
            })?;
            row.push(v);
        }
        if row.len() != 2 * n {
            return Err(Error::HeaderMismatch(format!(
                "row on line {line} has {} entries, expected 2n = {}",
                row.len(),
                2 * n
            )));
        }
        Ok(row)
    } else {
        let q = PrimeModulus::new(header.q.expect("validated").0)?;
        let v = parse_pauli_string(line_text, q).map_err(|e| match e {
            Error::SyntaxError {
                column, message, ..
            } => Error::SyntaxError {
                line,
                column,
                message,
            },
            other => Error::SyntaxError {
                line,
                column: tokens[0].0,
                message: other.to_string(),
            },
        })?;
        if v.n() != n {
            return Err(Error::HeaderMismatch(format!(
                "row on line {line} names {} registers, expected n = {n}",
                v.n()
            )));
        }
        Ok(v.entries().to_vec())
    }
}

pub fn format_code_file(code: &CodeSpec) -> String {
    let mut out = format!("q {}\nn {}\nk {}\n", code.q(), code.n(), code.k());
    if let Some(c) = code.declared_c {
        out.push_str(&format!("c {c}\n"));
    }
    if let Some(d) = code.declared_d {
        out.push_str(&format!("d {d}\n"));
    }
    if code.is_unbounded() {
        out.push_str("entries unbounded\n");
    }
    let n = code.n();
    for r in 0..code.k() {
        let row = code.matrix().row(r);
        let fmt_half = |half: &[i64]| {
            half.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!(
            "{} | {}\n",
            fmt_half(&row[..n]),
            fmt_half(&row[n..])
        ));
    }
    out
}
