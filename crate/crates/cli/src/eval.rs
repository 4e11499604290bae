//! Line-oriented expression evaluation.
//!
//! Each line is an operation name followed by arguments separated by
//! whitespace. A series argument containing spaces is wrapped in `[...]`;
//! group elements are tuples `(a, b)`, `(a, b, r)` or `(a, b, r, w)`.
//!
//! ```text
//! star xi
//! pairing_pi 1 [xi + eta]
//! cbm_comm (0, 0, 1, 0) (1, 0, 0, 0)
//! ```

use profree_core::{
    f_map, group_series, membership_cn, pairing, pairing_pi, phi_series, psi_axis, Axis, CbmElem,
    ChartHint, Embedding, GroupElt, Ideal, MetabElem, Params, PsiIndex, RElem, SElem, Series,
};

use crate::error::{CliError, Result};

/// One operation name with the list of accepted argument shapes.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("star", "r"),
    ("decompose_pm", "r"),
    ("embed", "one|two|hat r"),
    ("gamma", "s"),
    ("pi", "s"),
    ("psi", "s [one|two|avg]"),
    ("psi_tau", "s [one|two|avg]"),
    ("chart_a", "s"),
    ("chart_b", "s"),
    ("member", "s zeta|tau|zetatau|delta"),
    ("add", "a b"),
    ("mul", "a b"),
    ("pairing", "r s"),
    ("pairing_pi", "r s"),
    ("group", "a b"),
    ("phi", "a b"),
    ("metab_mul", "g h"),
    ("metab_inv", "g"),
    ("metab_comm", "g h"),
    ("cbm_mul", "g h"),
    ("cbm_inv", "g"),
    ("cbm_comm", "g h"),
    ("cbm_conj", "g (a, b)"),
    ("membership", "g"),
    ("f", "g"),
];

/// An argument with its 1-based starting column.
struct Arg<'a> {
    column: usize,
    text: &'a str,
}

fn split_args(line: &str, number: usize) -> Result<Vec<Arg<'_>>> {
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let close = match bytes[i] {
            b'[' => Some(b']'),
            b'(' => Some(b')'),
            _ => None,
        };
        match close {
            Some(close) => {
                let open = bytes[start];
                let mut depth = 0usize;
                let mut end = None;
                for (k, &b) in bytes.iter().enumerate().skip(start) {
                    if b == open {
                        depth += 1;
                    } else if b == close {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(k);
                            break;
                        }
                    }
                }
                let end = end.ok_or_else(|| CliError::Parse {
                    line: number,
                    column: start + 1,
                    message: format!("unclosed `{}`", open as char),
                })?;
                let (column, text) = if open == b'[' {
                    (start + 2, &line[start + 1..end])
                } else {
                    (start + 1, &line[start..=end])
                };
                out.push(Arg { column, text });
                i = end + 1;
            }
            None => {
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                out.push(Arg { column: start + 1, text: &line[start..i] });
            }
        }
    }
    Ok(out)
}

struct Ctx<'a> {
    line: usize,
    params: Params,
    args: Vec<Arg<'a>>,
}

impl Ctx<'_> {
    fn usage(&self, message: impl Into<String>) -> CliError {
        CliError::Usage { line: self.line, message: message.into() }
    }

    fn arity(&self, name: &str, shape: &str, counts: &[usize]) -> Result<()> {
        if counts.contains(&self.args.len()) {
            Ok(())
        } else {
            Err(self.usage(format!("`{name}` takes {shape}")))
        }
    }

    fn lift<T>(&self, column: usize, r: profree_core::Result<T>) -> Result<T> {
        r.map_err(|e| CliError::at(self.line, column, e))
    }

    fn series(&self, i: usize, hint: ChartHint) -> Result<Series> {
        let a = &self.args[i];
        self.lift(a.column, Series::parse(a.text, self.params, hint))
    }

    fn r(&self, i: usize) -> Result<RElem> {
        let s = self.series(i, ChartHint::R)?;
        self.lift(self.args[i].column, RElem::new(s))
    }

    fn s(&self, i: usize) -> Result<SElem> {
        let s = self.series(i, ChartHint::S)?;
        self.lift(self.args[i].column, SElem::new(s))
    }

    fn int(&self, i: usize) -> Result<i64> {
        let a = &self.args[i];
        a.text.parse().map_err(|_| CliError::Parse {
            line: self.line,
            column: a.column,
            message: format!("expected an integer, found `{}`", a.text),
        })
    }

    fn group(&self, i: usize) -> Result<GroupElt> {
        let a = &self.args[i];
        self.lift(a.column, GroupElt::parse(a.text))
    }

    fn metab(&self, i: usize) -> Result<MetabElem> {
        let a = &self.args[i];
        self.lift(a.column, MetabElem::parse(a.text, self.params))
    }

    fn cbm(&self, i: usize) -> Result<CbmElem> {
        let a = &self.args[i];
        self.lift(a.column, CbmElem::parse(a.text, self.params))
    }

    fn word(&self, i: usize) -> &str {
        self.args.get(i).map_or("", |a| a.text)
    }

    fn psi_index(&self, i: usize) -> Result<PsiIndex> {
        match self.args.get(i).map(|a| a.text) {
            None | Some("avg") => Ok(PsiIndex::Avg),
            Some("one") => Ok(PsiIndex::One),
            Some("two") => Ok(PsiIndex::Two),
            Some(other) => Err(self.usage(format!("unknown psi index `{other}`"))),
        }
    }
}

/// Evaluates one line; blank lines and `#` comments give `None`.
pub fn eval_line(text: &str, line: usize, params: Params) -> Result<Option<String>> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let name_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let name = &trimmed[..name_len];
    let offset = text.len() - trimmed.len() + name_len;
    let mut args = split_args(&text[offset..], line)?;
    for a in &mut args {
        a.column += offset;
    }
    let Some(&(_, shape)) = OPERATIONS.iter().find(|(op, _)| *op == name) else {
        return Err(CliError::Usage { line, message: format!("unknown operation `{name}`") });
    };
    let cx = Ctx { line, params, args };
    let n = shape.split(' ').count();
    let counts: Vec<usize> = if shape.contains('[') { vec![n - 1, n] } else { vec![n] };
    cx.arity(name, shape, &counts)?;
    let col = |i: usize| cx.args[i].column;
    let out = match name {
        "star" => cx.r(0)?.star().to_string(),
        "decompose_pm" => {
            let (plus, minus) = cx.r(0)?.decompose_pm();
            format!("[{plus}] [{minus}]")
        }
        "embed" => {
            let which = match cx.word(0) {
                "one" => Embedding::One,
                "two" => Embedding::Two,
                "hat" => Embedding::Hat,
                other => return Err(cx.usage(format!("unknown embedding `{other}`"))),
            };
            cx.r(1)?.embed(which).to_string()
        }
        "gamma" => cx.s(0)?.gamma().to_string(),
        "pi" => cx.s(0)?.pi().to_string(),
        "psi" | "psi_tau" => {
            let axis = if name == "psi" { Axis::Zeta } else { Axis::Tau };
            let which = cx.psi_index(1)?;
            cx.lift(col(0), psi_axis(&cx.s(0)?, axis, which))?.to_string()
        }
        "chart_a" => cx.s(0)?.chart_a().to_string(),
        "chart_b" => cx.s(0)?.chart_b().to_string(),
        "member" => {
            let ideal = match cx.word(1) {
                "zeta" => Ideal::Zeta,
                "tau" => Ideal::Tau,
                "zetatau" => Ideal::ZetaTau,
                "delta" => Ideal::Delta,
                other => return Err(cx.usage(format!("unknown ideal `{other}`"))),
            };
            cx.s(0)?.in_ideal(ideal).to_string()
        }
        "add" | "mul" => {
            let a = cx.series(0, ChartHint::Any)?;
            let b = cx.series(1, ChartHint::Exact(a.chart()))?;
            let r = if name == "add" { a.try_add(&b) } else { a.try_mul(&b) };
            cx.lift(col(1), r)?.to_string()
        }
        "pairing" => pairing(&cx.r(0)?, &cx.r(1)?).to_string(),
        "pairing_pi" => pairing_pi(&cx.r(0)?, &cx.r(1)?).to_string(),
        "group" => group_series(params, cx.int(0)?, cx.int(1)?).to_string(),
        "phi" => phi_series(params, cx.int(0)?, cx.int(1)?).to_string(),
        "metab_mul" => cx.metab(0)?.mul(&cx.metab(1)?).to_string(),
        "metab_inv" => cx.metab(0)?.inv().to_string(),
        "metab_comm" => cx.metab(0)?.comm(&cx.metab(1)?).to_string(),
        "cbm_mul" => cx.cbm(0)?.mul(&cx.cbm(1)?).to_string(),
        "cbm_inv" => cx.cbm(0)?.inv().to_string(),
        "cbm_comm" => cx.cbm(0)?.comm(&cx.cbm(1)?).to_string(),
        "cbm_conj" => cx.cbm(0)?.conj(cx.group(1)?).to_string(),
        "membership" => format!("{:?}", cx.lift(col(0), membership_cn(&cx.cbm(0)?))?),
        "f" => cx.lift(col(0), f_map(&cx.cbm(0)?))?.to_string(),
        _ => unreachable!("operation table and dispatch agree"),
    };
    Ok(Some(out))
}

/// Evaluates every line; failures do not stop later lines.
pub fn eval_text(text: &str, params: Params) -> Vec<Result<Option<String>>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| eval_line(line, i + 1, params))
        .collect()
}
