//! Plain-text file formats.
//!
//! * message: coefficients lowest degree first, space separated; for
//!   multiplicity codes, coefficients of the monomials of degree `<= d` in
//!   graded-lex order.
//! * FRS word: `q m N k gamma`, then `m` rows of `N` elements.
//! * derivative word: `q m n k`, then the evaluation points, then `m` rows.
//! * multiplicity word: `q m s d`, then one line per point in lex order:
//!   coordinates followed by the `w` symbol entries.

use crate::derivative::DerParams;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::frs::FrsParams;
use crate::matrix::Matrix;
use crate::multiplicity::MultParams;
use crate::multipoly::MultiPoly;
use crate::oracle::Code;
use crate::poly::Poly;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn header<const N: usize>(line: Option<&str>) -> Result<[u64; N]> {
    let line = line.ok_or_else(|| parse_err("missing header"))?;
    let v: Vec<u64> = line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(format!("bad header field '{t}'"))))
        .collect::<Result<_>>()?;
    v.try_into().map_err(|v: Vec<u64>| parse_err(format!("header needs {N} fields, got {}", v.len())))
}

fn elems(line: &str, f: &FieldCtx, want: usize) -> Result<Vec<Fe>> {
    let v = line.split_whitespace().map(|t| f.parse_elem(t)).collect::<Result<Vec<_>>>()?;
    if v.len() != want {
        return Err(parse_err(format!("expected {want} entries, got {}", v.len())));
    }
    Ok(v)
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn write_rows(out: &mut String, word: &Matrix, f: &FieldCtx) {
    for j in 0..word.rows() {
        let row: Vec<String> = word.row(j).iter().map(|&x| f.format_elem(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn read_rows<'a>(lines: &mut impl Iterator<Item = &'a str>, rows: usize, cols: usize, f: &FieldCtx) -> Result<Matrix> {
    let data = (0..rows)
        .map(|_| elems(lines.next().ok_or_else(|| parse_err("missing row"))?, f, cols))
        .collect::<Result<Vec<_>>>()?;
    if lines.next().is_some() {
        return Err(parse_err("trailing data"));
    }
    Matrix::from_rows(data)
}

pub fn write_message(msg: &Poly, f: &FieldCtx) -> String {
    format!("{}\n", msg.to_text(f))
}

pub fn read_message(text: &str, f: &FieldCtx) -> Result<Poly> {
    Poly::from_text(&content_lines(text).collect::<Vec<_>>().join(" "), f)
}

pub fn write_mult_message(params: &MultParams, msg: &MultiPoly) -> String {
    let f = params.field();
    let coeffs: Vec<String> = crate::multipoly::exponents_below(params.m(), params.d() as u32 + 1)
        .iter()
        .map(|e| f.format_elem(msg.coeff(e)))
        .collect();
    format!("{}\n", coeffs.join(" "))
}

pub fn read_mult_message(text: &str, params: &MultParams) -> Result<MultiPoly> {
    let f = params.field();
    let coeffs = content_lines(text)
        .flat_map(str::split_whitespace)
        .map(|t| f.parse_elem(t))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() > params.message_len() {
        return Err(Error::DegreeTooLarge { degree: coeffs.len(), bound: params.message_len() });
    }
    Ok(params.message_from_coeffs(coeffs))
}

pub fn write_frs(params: &FrsParams, word: &Matrix) -> String {
    let f = params.field();
    let mut out = format!(
        "{} {} {} {} {}\n",
        f.order(),
        params.m(),
        params.block_length(),
        params.k(),
        f.format_elem(params.gamma())
    );
    write_rows(&mut out, word, f);
    out
}

pub fn read_frs(text: &str) -> Result<(FrsParams, Matrix)> {
    let mut lines = content_lines(text);
    let first = lines.next().ok_or_else(|| parse_err("missing header"))?;
    let mut parts = first.split_whitespace();
    let nums: [u64; 4] = header(Some(&parts.by_ref().take(4).collect::<Vec<_>>().join(" ")))?;
    let gamma = parts.next().ok_or_else(|| parse_err("header missing gamma"))?;
    let [q, m, big_n, k] = nums;
    let params = FrsParams::with_block_length(q, m as usize, big_n as usize, k as usize)?;
    if params.field().parse_elem(gamma)? != params.gamma() {
        return Err(parse_err(format!("gamma {gamma} is not the field's primitive element")));
    }
    let word = read_rows(&mut lines, m as usize, big_n as usize, params.field())?;
    Ok((params, word))
}

pub fn write_der(params: &DerParams, word: &Matrix) -> String {
    let f = params.field();
    let mut out = format!("{} {} {} {}\n", f.order(), params.m(), params.n(), params.k());
    let pts: Vec<String> = params.points().iter().map(|&a| f.format_elem(a)).collect();
    out.push_str(&pts.join(" "));
    out.push('\n');
    write_rows(&mut out, word, f);
    out
}

pub fn read_der(text: &str) -> Result<(DerParams, Matrix)> {
    let mut lines = content_lines(text);
    let [q, m, n, k] = header::<4>(lines.next())?;
    let f = FieldCtx::new(q)?;
    let pts = elems(lines.next().ok_or_else(|| parse_err("missing points"))?, &f, n as usize)?;
    let params = DerParams::with_points(f, m as usize, k as usize, pts)?;
    let word = read_rows(&mut lines, m as usize, n as usize, params.field())?;
    Ok((params, word))
}

pub fn write_mult(params: &MultParams, word: &Matrix) -> String {
    let f = params.field();
    let mut out = format!("{} {} {} {}\n", params.q(), params.m(), params.s(), params.d());
    for idx in 0..params.n() {
        let line: Vec<String> =
            params.point_of(idx).iter().chain(word.column(idx)).map(|&x| f.format_elem(x)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_mult(text: &str) -> Result<(MultParams, Matrix)> {
    let mut lines = content_lines(text);
    let [q, m, s, d] = header::<4>(lines.next())?;
    let params = MultParams::new(q, m as usize, s as usize, d as usize)?;
    let f = params.field();
    let (m, w) = (params.m(), params.w());
    let mut cols = Vec::with_capacity(params.n());
    for idx in 0..params.n() {
        let v = elems(lines.next().ok_or_else(|| parse_err("missing point line"))?, f, m + w)?;
        if v[..m] != params.point_of(idx)[..] {
            return Err(parse_err(format!("point line {idx} out of lexicographic order")));
        }
        cols.push(v[m..].to_vec());
    }
    if lines.next().is_some() {
        return Err(parse_err("trailing data"));
    }
    Ok((params.clone(), Matrix::from_columns(w, cols)?))
}
