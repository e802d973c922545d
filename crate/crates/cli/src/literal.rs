use num_complex::Complex64;
use weylop::scalar::{Assignment, ScalarExpr, Symbol};
use weylop::weyl::{WeylIndex, WeylOp};
use weylop::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_index(s: &str) -> Result<(i64, i64)> {
    let (m, n) = s.split_once(',').ok_or_else(|| parse_err(format!("expected `m,n`, got `{s}`")))?;
    let m = m.trim().parse().map_err(|_| parse_err(format!("bad index `{m}`")))?;
    let n = n.trim().parse().map_err(|_| parse_err(format!("bad index `{n}`")))?;
    Ok((m, n))
}

/// Split at top-level `+`/`-`, keeping the sign with the following term.
/// Signs right after `:`, `,`, `^`, `*`, `/` or `(` belong to a number.
fn split_terms(s: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let binary = matches!(ch, '+' | '-')
            && depth == 0
            && !cur.trim().is_empty()
            && !matches!(prev, Some(':' | ',' | '^' | '*' | '/' | '('));
        if binary {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    terms.push(cur);
    terms
}

/// Operator literal: a sum of terms `[coeff*]T:m,n`, e.g.
/// `T:-1,1`, `1/2*T:2,0 + 1/2*T:0,2`, `(rho^-2 - hbar)*T:0,1`.
pub fn parse_op(s: &str) -> Result<WeylOp> {
    let mut out = WeylOp::zero();
    for raw in split_terms(s) {
        let term = raw.trim();
        let (sign, term) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest.trim_start()),
            None => (1, term.strip_prefix('+').unwrap_or(term).trim_start()),
        };
        let at = term.rfind("T:").ok_or_else(|| parse_err(format!("missing `T:m,n` in `{raw}`")))?;
        let (m, n) = parse_index(&term[at + 2..])?;
        let prefix = term[..at].trim_end();
        let prefix = prefix.strip_suffix('*').unwrap_or(prefix).trim();
        let mut coeff = if prefix.is_empty() { ScalarExpr::one() } else { prefix.parse::<ScalarExpr>()? };
        if sign < 0 {
            coeff = -coeff;
        }
        out.add_term(WeylIndex::new(m, n), &coeff);
    }
    Ok(out)
}

/// `p/q` or a decimal.
pub fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p.trim().parse().map_err(|_| parse_err(format!("bad number `{s}`")))?;
        let q: f64 = q.trim().parse().map_err(|_| parse_err(format!("bad number `{s}`")))?;
        if q == 0.0 {
            return Err(parse_err(format!("zero denominator in `{s}`")));
        }
        return Ok(p / q);
    }
    s.parse().map_err(|_| parse_err(format!("bad number `{s}`")))
}

/// `sym=value` pairs.
pub fn parse_assignment(pairs: &[String]) -> Result<Assignment> {
    let mut a = Assignment::new();
    for pair in pairs {
        let (sym, val) =
            pair.split_once('=').ok_or_else(|| parse_err(format!("expected `sym=value`, got `{pair}`")))?;
        let sym: Symbol = sym.trim().parse()?;
        a.insert(sym, Complex64::new(parse_number(val)?, 0.0));
    }
    Ok(a)
}

/// `k=v` seed overrides; `k` is a comma-separated index tuple, `v` a scalar.
pub fn parse_seed(s: &str) -> Result<(Vec<i64>, ScalarExpr)> {
    let (key, val) = s.split_once('=').ok_or_else(|| parse_err(format!("expected `idx=value`, got `{s}`")))?;
    let key = key
        .split(',')
        .map(|k| k.trim().parse::<i64>().map_err(|_| parse_err(format!("bad seed index `{k}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((key, val.parse()?))
}
