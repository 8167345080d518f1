//! JSON codecs and string parsers for the CLI: exact scalars, symbols,
//! algebras, simplicial complexes, Laurent matrices and divisors.
//!
//! Scalars are exact everywhere: a scalar is an integer, a string
//! rational "p/q", or a two-element array [re, im] of those. Floats are
//! rejected so nothing silently rounds.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use orbitkit_core::liealg::LieAlgebraSpec;
use orbitkit_core::scalar::{Rat, ScalarQ};
use orbitkit_core::starprod::{Chart, Symbol};
use orbitkit_core::index::divisor::{Divisor, P1Point};
use orbitkit_core::index::simplicial::SimplicialComplex;
use orbitkit_core::xcomplex::algebra::FDAlgebra;
use orbitkit_core::xcomplex::laurent::{LaurentMatrix, LaurentPoly};

pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| anyhow!("expected an exact integer, got {n}"))?;
            Ok(Rat::from_integer(BigInt::from(i)))
        }
        Value::String(s) => {
            Rat::from_str(s.trim()).map_err(|e| anyhow!("bad rational {s:?}: {e}"))
        }
        other => bail!("expected integer or \"p/q\" string, got {other}"),
    }
}

pub fn parse_scalar(v: &Value) -> Result<ScalarQ> {
    match v {
        Value::Array(parts) => {
            if parts.len() != 2 {
                bail!("complex scalar must be [re, im]");
            }
            Ok(ScalarQ::new(parse_rat(&parts[0])?, parse_rat(&parts[1])?))
        }
        other => Ok(ScalarQ::from_rat(parse_rat(other)?)),
    }
}

pub fn rat_to_value(r: &Rat) -> Value {
    if r.is_integer() {
        if let Some(i) = num_traits::ToPrimitive::to_i64(&r.to_integer()) {
            return json!(i);
        }
    }
    json!(r.to_string())
}

pub fn scalar_to_value(c: &ScalarQ) -> Value {
    if c.is_real() {
        rat_to_value(&c.re)
    } else {
        json!([rat_to_value(&c.re), rat_to_value(&c.im)])
    }
}

pub fn parse_chart(name: &str) -> Result<Chart> {
    match name {
        "pq" => Ok(Chart::PQ),
        "zw" => Ok(Chart::ZW),
        "xq" => Ok(Chart::XQ),
        "uu" => Ok(Chart::UUbar),
        other => bail!("unknown chart {other:?} (expected pq, zw, xq or uu)"),
    }
}

/// Symbol JSON: `{"chart": "pq", "terms": [{"c": scalar, "p": [..],
/// "q": [..], "exp": [..]}]}`. `p` holds the position exponents, `q` the
/// remaining monomial exponents, `exp` the exponential weights of the
/// non-position variables; chart defaults to "pq".
pub fn parse_symbol(v: &Value) -> Result<Symbol> {
    let obj = v.as_object().context("symbol must be an object")?;
    let chart = match obj.get("chart") {
        Some(c) => parse_chart(c.as_str().context("chart must be a string")?)?,
        None => Chart::PQ,
    };
    let (pos_vars, other_vars): (&[usize], &[usize]) = match chart {
        Chart::PQ => (&[0], &[1]),
        Chart::ZW => (&[0, 2], &[1, 3]),
        Chart::XQ => (&[0], &[1]),
        Chart::UUbar => (&[0], &[1]),
        Chart::ST => (&[0], &[1]),
    };
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .context("symbol needs a \"terms\" array")?;
    let mut acc = Symbol::zero(chart);
    for t in terms {
        let t = t.as_object().context("term must be an object")?;
        let c = parse_scalar(t.get("c").context("term needs \"c\"")?)?;
        let nv = chart.nvars();
        let mut pow = vec![0u32; nv];
        let mut expw = vec![Rat::from_integer(0.into()); nv];
        let ps = t.get("p").and_then(Value::as_array);
        let qs = t.get("q").and_then(Value::as_array);
        let es = t.get("exp").and_then(Value::as_array);
        if let Some(ps) = ps {
            if ps.len() != pos_vars.len() {
                bail!("\"p\" must have {} entries for this chart", pos_vars.len());
            }
            for (slot, pv) in pos_vars.iter().zip(ps) {
                pow[*slot] = pv.as_u64().context("\"p\" entries are nonnegative integers")? as u32;
            }
        }
        if let Some(qs) = qs {
            if qs.len() != other_vars.len() {
                bail!("\"q\" must have {} entries for this chart", other_vars.len());
            }
            for (slot, qv) in other_vars.iter().zip(qs) {
                pow[*slot] = qv.as_u64().context("\"q\" entries are nonnegative integers")? as u32;
            }
        }
        if let Some(es) = es {
            if es.len() != other_vars.len() {
                bail!(
                    "\"exp\" must have {} entries for this chart",
                    other_vars.len()
                );
            }
            for (slot, ev) in other_vars.iter().zip(es) {
                expw[*slot] = parse_rat(ev)?;
            }
        }
        acc = acc.add(&Symbol::monomial(chart, c, pow, expw));
    }
    Ok(acc)
}

pub fn symbol_to_value(s: &Symbol) -> Value {
    let chart = match s.chart() {
        Chart::PQ => "pq",
        Chart::ZW => "zw",
        Chart::XQ => "xq",
        Chart::UUbar => "uu",
        Chart::ST => "st",
    };
    let (pos_vars, other_vars): (&[usize], &[usize]) = match s.chart() {
        Chart::ZW => (&[0, 2], &[1, 3]),
        _ => (&[0], &[1]),
    };
    let terms: Vec<Value> = s
        .terms()
        .map(|(pow, expw, c)| {
            json!({
                "c": scalar_to_value(c),
                "p": pos_vars.iter().map(|&i| json!(pow[i])).collect::<Vec<_>>(),
                "q": other_vars.iter().map(|&i| json!(pow[i])).collect::<Vec<_>>(),
                "exp": other_vars.iter().map(|&i| rat_to_value(&expw[i])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"chart": chart, "terms": terms, "render": s.render()})
}

/// Lie algebra JSON: `{"basis": ["X", "Y"], "brackets": [{"i": 0, "j": 1,
/// "coeffs": [0, 1]}]}`; builtins are addressable by name.
pub fn parse_algebra_spec(v: &Value) -> Result<std::sync::Arc<LieAlgebraSpec>> {
    if let Some(name) = v.as_str() {
        return LieAlgebraSpec::builtin(name)
            .ok_or_else(|| anyhow!("unknown builtin algebra {name:?}"));
    }
    let obj = v.as_object().context("algebra must be an object or name")?;
    let basis: Vec<String> = obj
        .get("basis")
        .and_then(Value::as_array)
        .context("algebra needs \"basis\"")?
        .iter()
        .map(|b| b.as_str().map(String::from).context("basis names are strings"))
        .collect::<Result<_>>()?;
    let mut brackets = Vec::new();
    for b in obj
        .get("brackets")
        .and_then(Value::as_array)
        .context("algebra needs \"brackets\"")?
    {
        let b = b.as_object().context("bracket must be an object")?;
        let i = b.get("i").and_then(Value::as_u64).context("bracket needs i")? as usize;
        let j = b.get("j").and_then(Value::as_u64).context("bracket needs j")? as usize;
        let coeffs = b
            .get("coeffs")
            .and_then(Value::as_array)
            .context("bracket needs coeffs")?
            .iter()
            .map(parse_scalar)
            .collect::<Result<Vec<_>>>()?;
        brackets.push((i, j, coeffs));
    }
    LieAlgebraSpec::new(basis, brackets)
        .map(std::sync::Arc::new)
        .map_err(|e| anyhow!("{e}"))
}

/// Simplicial complex JSON: `{"simplices": {"0": [0, 1, ...] or [[0], ...],
/// "1": [[i, j], ...], "2": [[i, j, k], ...]}}`.
pub fn parse_complex(v: &Value) -> Result<SimplicialComplex> {
    let obj = v
        .as_object()
        .and_then(|o| o.get("simplices"))
        .and_then(Value::as_object)
        .context("complex needs a \"simplices\" object keyed by dimension")?;
    let maxdim = obj
        .keys()
        .map(|k| k.parse::<usize>().context("dimension keys are integers"))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .context("empty complex")?;
    let mut dims: Vec<Vec<Vec<usize>>> = vec![Vec::new(); maxdim + 1];
    for (k, list) in obj {
        let d: usize = k.parse()?;
        let list = list.as_array().context("each dimension holds an array")?;
        for s in list {
            let simplex: Vec<usize> = match s {
                Value::Number(n) => vec![n.as_u64().context("vertex id")? as usize],
                Value::Array(vs) => vs
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|u| u as usize)
                            .context("vertex ids are nonnegative integers")
                    })
                    .collect::<Result<_>>()?,
                other => bail!("bad simplex {other}"),
            };
            if simplex.len() != d + 1 {
                bail!("simplex {simplex:?} listed under dimension {d}");
            }
            dims[d].push(simplex);
        }
    }
    SimplicialComplex::new(dims).map_err(|e| anyhow!("{e}"))
}

/// FD algebra JSON: `{"labels": [...], "mult": [[[scalar;dim];dim];dim],
/// "unit": [scalar;dim]}`; builtins by name ("c", "c2", "m2").
pub fn parse_fdalgebra(v: &Value) -> Result<std::sync::Arc<FDAlgebra>> {
    if let Some(name) = v.as_str() {
        return FDAlgebra::builtin(name)
            .ok_or_else(|| anyhow!("unknown builtin algebra {name:?} (expected c, c2 or m2)"));
    }
    let obj = v.as_object().context("algebra must be an object or name")?;
    let labels: Vec<String> = obj
        .get("labels")
        .and_then(Value::as_array)
        .context("algebra needs \"labels\"")?
        .iter()
        .map(|b| b.as_str().map(String::from).context("labels are strings"))
        .collect::<Result<_>>()?;
    let mult = obj
        .get("mult")
        .and_then(Value::as_array)
        .context("algebra needs \"mult\"")?
        .iter()
        .map(|row| {
            row.as_array()
                .context("mult rows")?
                .iter()
                .map(|cell| {
                    cell.as_array()
                        .context("mult cells are coefficient arrays")?
                        .iter()
                        .map(parse_scalar)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = obj
        .get("unit")
        .and_then(Value::as_array)
        .context("algebra needs \"unit\"")?
        .iter()
        .map(parse_scalar)
        .collect::<Result<Vec<_>>>()?;
    FDAlgebra::new(labels, mult, unit).map_err(|e| anyhow!("{e}"))
}

/// Laurent matrix JSON: `{"size": n, "entries": [[cell; n]; n]}` with each
/// cell a list of `[exponent, scalar]` pairs.
pub fn parse_laurent_matrix(v: &Value) -> Result<LaurentMatrix> {
    let obj = v.as_object().context("matrix must be an object")?;
    let size = obj
        .get("size")
        .and_then(Value::as_u64)
        .context("matrix needs \"size\"")? as usize;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .context("matrix needs \"entries\"")?;
    if entries.len() != size {
        bail!("expected {size} rows");
    }
    let mut rows = Vec::with_capacity(size);
    for row in entries {
        let row = row.as_array().context("rows are arrays")?;
        if row.len() != size {
            bail!("expected {size} columns");
        }
        let mut out_row = Vec::with_capacity(size);
        for cell in row {
            let mut p = LaurentPoly::zero();
            for term in cell.as_array().context("cells are [exp, scalar] lists")? {
                let pair = term.as_array().context("terms are [exp, scalar]")?;
                if pair.len() != 2 {
                    bail!("terms are [exp, scalar]");
                }
                let k = pair[0].as_i64().context("exponent is an integer")?;
                let c = parse_scalar(&pair[1])?;
                p = p.add(&LaurentPoly::term(k, c));
            }
            out_row.push(p);
        }
        rows.push(out_row);
    }
    LaurentMatrix::new(rows).map_err(|e| anyhow!("{e}"))
}

/// Divisor strings: signed integer multiples of bracketed points, e.g.
/// `2*[0] - 1*[inf]`, `[1/2] + 3*[-2]`.
pub fn parse_divisor(s: &str) -> Result<Divisor> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Divisor::new(Vec::new()).map_err(|e| anyhow!("{e}"));
    }
    let mut points = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let sign = if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            -1i64
        } else {
            rest = rest.strip_prefix('+').unwrap_or(rest);
            1
        };
        // optional multiplicity
        let mult_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let mult = if mult_end > 0 {
            let m: i64 = rest[..mult_end].parse()?;
            rest = &rest[mult_end..];
            rest = rest
                .strip_prefix('*')
                .ok_or_else(|| anyhow!("expected '*' after multiplicity in {s:?}"))?;
            m
        } else {
            1
        };
        let inner_end = rest
            .find(']')
            .ok_or_else(|| anyhow!("expected ']' in {s:?}"))?;
        let inner = rest
            .strip_prefix('[')
            .ok_or_else(|| anyhow!("expected '[' before point in {s:?}"))?;
        let point_str = &inner[..inner_end - 1];
        rest = &rest[inner_end + 1..];
        let point = if point_str == "inf" || point_str == "infinity" {
            P1Point::Infinity
        } else {
            P1Point::Finite(
                Rat::from_str(point_str).map_err(|e| anyhow!("bad point {point_str:?}: {e}"))?,
            )
        };
        points.push((point, sign * mult));
    }
    Divisor::new(points).map_err(|e| anyhow!("{e}"))
}

/// Idempotent matrices for the lifting command: either a flat coefficient
/// vector (a 1x1 matrix over the algebra) or a nested matrix of them.
pub fn parse_idempotent(v: &Value, dim: usize) -> Result<Vec<Vec<Vec<ScalarQ>>>> {
    let arr = v.as_array().context("idempotent must be an array")?;
    let is_flat = arr.iter().all(|x| !x.is_array() || x.as_array().is_some_and(|a| a.len() == 2 && !a[0].is_array()));
    if is_flat && arr.len() == dim {
        let coeffs = arr.iter().map(parse_scalar).collect::<Result<Vec<_>>>()?;
        return Ok(vec![vec![coeffs]]);
    }
    // nested: rows of cells of coefficient vectors
    let mut rows = Vec::new();
    for row in arr {
        let row = row.as_array().context("matrix rows are arrays")?;
        let mut out = Vec::new();
        for cell in row {
            let cell = cell.as_array().context("cells are coefficient arrays")?;
            if cell.len() != dim {
                bail!("coefficient vectors must have length {dim}");
            }
            out.push(cell.iter().map(parse_scalar).collect::<Result<Vec<_>>>()?);
        }
        rows.push(out);
    }
    Ok(rows)
}

/// Stable key order for emitted JSON objects.
pub fn sorted_object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar(&json!(3)).unwrap(), ScalarQ::from_int(3));
        assert_eq!(
            parse_scalar(&json!("-3/4")).unwrap(),
            ScalarQ::rational(-3, 4)
        );
        assert_eq!(
            parse_scalar(&json!([0, "1/2"])).unwrap(),
            ScalarQ::complex(0, 1, 1, 2)
        );
        assert!(parse_scalar(&json!(0.5)).is_err(), "floats must be rejected");
        // roundtrip
        let c = ScalarQ::complex(-7, 3, 2, 5);
        assert_eq!(parse_scalar(&scalar_to_value(&c)).unwrap(), c);
    }

    #[test]
    fn symbols() {
        // p * e^q on the half-plane chart
        let v = json!({"terms": [{"c": 1, "p": [1], "q": [0], "exp": [1]}]});
        let s = parse_symbol(&v).unwrap();
        let expect = Symbol::var(Chart::PQ, 0).mul(&Symbol::exponential(
            Chart::PQ,
            vec![Rat::from_integer(0.into()), Rat::from_integer(1.into())],
        ));
        assert_eq!(s, expect);
        // roundtrip through the emitted value
        let back = parse_symbol(&symbol_to_value(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn divisors() {
        let d = parse_divisor("2*[0] - 1*[inf]").unwrap();
        assert_eq!(d.degree(), 1);
        let d2 = parse_divisor("[1/2]+3*[-2]").unwrap();
        assert_eq!(d2.degree(), 4);
        assert!(parse_divisor("bogus").is_err());
        assert!(parse_divisor("2*[0] + [0]").is_err(), "repeated point");
    }

    #[test]
    fn algebras() {
        let aff = parse_algebra_spec(&json!("affR")).unwrap();
        assert_eq!(aff.dim(), 2);
        let custom = parse_algebra_spec(&json!({
            "basis": ["X", "Y"],
            "brackets": [{"i": 0, "j": 1, "coeffs": [0, 1]}],
        }))
        .unwrap();
        assert_eq!(*custom, *aff);
        assert!(parse_fdalgebra(&json!("m2")).is_ok());
    }

    #[test]
    fn complexes() {
        let v = json!({"simplices": {"0": [0, 1, 2], "1": [[0,1],[0,2],[1,2]]}});
        let c = parse_complex(&v).unwrap();
        assert_eq!((c.count(0), c.count(1)), (3, 3));
        // triangle boundary: a circle
        assert_eq!(orbitkit_core::index::simplicial::euler_characteristic(&c), 0);
    }

    #[test]
    fn laurent_matrices() {
        let v = json!({"size": 2, "entries": [
            [[[1, 1]], []],
            [[], [[-3, 1]]],
        ]});
        let m = parse_laurent_matrix(&v).unwrap();
        assert_eq!(
            orbitkit_core::xcomplex::laurent::chern1_winding(&m).unwrap(),
            -2
        );
    }

    #[test]
    fn idempotents() {
        let flat = parse_idempotent(&json!([0, 1]), 2).unwrap();
        assert_eq!(flat.len(), 1);
        assert_eq!(flat[0][0][1], ScalarQ::one());
    }
}
