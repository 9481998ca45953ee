//! Parsing of CLI parameter syntax into core types.
//!
//! Family parameters accept exact rationals (`1`, `-2/3`) and complex
//! tuples (`(1/2,-1)`); a decimal point or exponent anywhere in a
//! component makes the whole descriptor take the float path.

use anyhow::{anyhow, bail, Context, Result};
use wforge_core::families::{Family, Param};
use wforge_core::geometry::Region;
use wforge_core::{Complex64, ComplexPoly, ExactComplex, RationalFunction};

/// Splits on commas not inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (idx, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(s[start..idx].trim());
                start = idx + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn parse_real_pair(s: &str) -> Result<(String, String)> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = inner.splitn(2, ',').collect();
        if parts.len() != 2 {
            bail!("complex parameter '{}' needs two components", s);
        }
        Ok((parts[0].trim().to_string(), parts[1].trim().to_string()))
    } else {
        Ok((t.to_string(), "0".to_string()))
    }
}

fn looks_float(s: &str) -> bool {
    s.contains('.') || s.contains('e') || s.contains('E')
}

/// One parameter: exact when both components are integers or `p/q`
/// fractions, float when either carries a decimal point or exponent.
pub fn parse_param(s: &str) -> Result<Param> {
    let (re, im) = parse_real_pair(s)?;
    if looks_float(&re) || looks_float(&im) {
        let re: f64 = re
            .parse()
            .with_context(|| format!("invalid float component '{}'", re))?;
        let im: f64 = im
            .parse()
            .with_context(|| format!("invalid float component '{}'", im))?;
        Ok(Param::Float(Complex64::new(re, im)))
    } else {
        let text = format!("({},{})", re, im);
        let exact: ExactComplex = text
            .parse()
            .map_err(|e| anyhow!("invalid parameter '{}': {}", s, e))?;
        Ok(Param::Exact(exact))
    }
}

pub fn parse_params(s: &str) -> Result<Vec<Param>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(s).into_iter().map(parse_param).collect()
}

/// Builds a family descriptor from `--family`/`--params` style input.
pub fn build_family(
    kind: &str,
    params: &[Param],
    n: Option<u32>,
    omega: Option<f64>,
) -> Result<Family> {
    let need = |count: usize| -> Result<()> {
        if params.len() != count {
            bail!(
                "family '{}' takes {} parameter(s), got {}",
                kind,
                count,
                params.len()
            );
        }
        Ok(())
    };
    let fam = match kind.to_ascii_lowercase().as_str() {
        "enneper" => {
            need(0)?;
            Family::Enneper
        }
        "r11" => {
            need(2)?;
            Family::R11 {
                a: params[0].clone(),
                b: params[1].clone(),
            }
        }
        "r12" => {
            need(4)?;
            Family::R12 {
                a: params[0].clone(),
                b: params[1].clone(),
                c: params[2].clone(),
                d: params[3].clone(),
            }
        }
        "r3" => {
            need(3)?;
            Family::R3 {
                a: params[0].clone(),
                b: params[1].clone(),
                c: params[2].clone(),
            }
        }
        "xw" => {
            let n = n.ok_or_else(|| anyhow!("family 'xw' needs --n"))?;
            let omega = omega.ok_or_else(|| anyhow!("family 'xw' needs --omega"))?;
            Family::XuWangOmega { n, omega }
        }
        "xw5" => {
            need(4)?;
            let mut reals = [0.0f64; 4];
            for (slot, p) in reals.iter_mut().zip(params) {
                let c = p.to_c64();
                if c.im != 0.0 {
                    bail!("family 'xw5' takes real parameters");
                }
                *slot = c.re;
            }
            Family::XuWangDeg5 {
                a1: reals[0],
                a2: reals[1],
                e1: reals[2],
                e2: reals[3],
            }
        }
        other => bail!(
            "unknown family '{}' (known: enneper, r11, r12, r3, xw, xw5)",
            other
        ),
    };
    Ok(fam)
}

/// `a,b` for a square region or `a,b,c,d` for u/v ranges.
pub fn parse_range(s: &str) -> Result<Region> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .with_context(|| format!("invalid range component '{}'", t))
        })
        .collect::<Result<_>>()?;
    match parts.as_slice() {
        [lo, hi] => Ok(Region {
            u_min: *lo,
            u_max: *hi,
            v_min: *lo,
            v_max: *hi,
        }),
        [ul, uh, vl, vh] => Ok(Region {
            u_min: *ul,
            u_max: *uh,
            v_min: *vl,
            v_max: *vh,
        }),
        _ => bail!("range must be 'lo,hi' or 'ulo,uhi,vlo,vhi'"),
    }
}

/// `n` or `nu,nv`.
pub fn parse_resolution(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("invalid resolution '{}'", t))
        })
        .collect::<Result<_>>()?;
    match parts.as_slice() {
        [n] => Ok((*n, *n)),
        [nu, nv] => Ok((*nu, *nv)),
        _ => bail!("resolution must be 'n' or 'nu,nv'"),
    }
}

/// `--f` polynomial text: `poly[...]` or the shorthand `z`.
pub fn parse_poly(s: &str) -> Result<ComplexPoly> {
    let t = s.trim();
    if t == "z" {
        return Ok(ComplexPoly::identity());
    }
    t.parse::<ComplexPoly>()
        .map_err(|e| anyhow!("invalid polynomial '{}': {}", s, e))
}

/// `--g` rational function text: `poly[...]`, `poly[...]/poly[...]`,
/// or the shorthand `z`.
pub fn parse_ratfunc(s: &str) -> Result<RationalFunction> {
    let t = s.trim();
    if t == "z" {
        return Ok(RationalFunction::identity());
    }
    t.parse::<RationalFunction>()
        .map_err(|e| anyhow!("invalid rational function '{}': {}", s, e))
}

/// JSON family descriptor: `{"kind": "...", "params": {...}}`.
/// Parameter values are strings in the CLI parameter syntax (exact
/// rationals or `(re,im)` tuples) or plain numbers (float path); the
/// xw family uses integer `n` and numeric `omega`.
#[derive(Debug, serde::Deserialize)]
pub struct FamilyDescriptor {
    pub kind: String,
    #[serde(default)]
    pub params: serde_json::Map<String, serde_json::Value>,
}

fn json_param(value: &serde_json::Value, name: &str) -> Result<Param> {
    match value {
        serde_json::Value::String(s) => parse_param(s),
        serde_json::Value::Number(n) => {
            let x = n
                .as_f64()
                .ok_or_else(|| anyhow!("parameter '{}' is not a finite number", name))?;
            if n.is_i64() {
                Ok(Param::Exact(ExactComplex::from_int(n.as_i64().unwrap())))
            } else {
                Ok(Param::Float(Complex64::new(x, 0.0)))
            }
        }
        other => bail!(
            "parameter '{}' must be a string or number, got {}",
            name,
            other
        ),
    }
}

pub fn family_from_descriptor(text: &str) -> Result<Family> {
    let desc: FamilyDescriptor =
        serde_json::from_str(text).context("descriptor is not valid JSON")?;
    let get = |name: &str| -> Result<Param> {
        let value = desc
            .params
            .get(name)
            .ok_or_else(|| anyhow!("family '{}' needs parameter '{}'", desc.kind, name))?;
        json_param(value, name)
    };
    match desc.kind.to_ascii_lowercase().as_str() {
        "xw" => {
            let n = desc
                .params
                .get("n")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| anyhow!("family 'xw' needs integer parameter 'n'"))?;
            let omega = desc
                .params
                .get("omega")
                .and_then(|v| v.as_f64())
                .ok_or_else(|| anyhow!("family 'xw' needs numeric parameter 'omega'"))?;
            build_family("xw", &[], Some(n as u32), Some(omega))
        }
        "enneper" => build_family("enneper", &[], None, None),
        "r11" => build_family("r11", &[get("a")?, get("b")?], None, None),
        "r12" => build_family(
            "r12",
            &[get("a")?, get("b")?, get("c")?, get("d")?],
            None,
            None,
        ),
        "r3" => build_family("r3", &[get("a")?, get("b")?, get("c")?], None, None),
        "xw5" => build_family(
            "xw5",
            &[get("a1")?, get("a2")?, get("e1")?, get("e2")?],
            None,
            None,
        ),
        other => bail!("unknown family kind '{}' in descriptor", other),
    }
}

/// Default output file name: `<family>_<params>_<res>.obj`.
pub fn default_file_name(family: &Family, res: (usize, usize), ext: &str) -> String {
    let params = match family {
        Family::Enneper => String::new(),
        Family::R11 { a, b } => format!("{}-{}", a, b),
        Family::R12 { a, b, c, d } => format!("{}-{}-{}-{}", a, b, c, d),
        Family::R3 { a, b, c } => format!("{}-{}-{}", a, b, c),
        Family::XuWangOmega { n, omega } => format!("n{}-w{}", n, omega),
        Family::XuWangDeg5 { a1, a2, e1, e2 } => format!("{}-{}-{}-{}", a1, a2, e1, e2),
    };
    let params = params.replace(['(', ')'], "").replace([',', '/'], "_");
    let res = if res.0 == res.1 {
        format!("{}", res.0)
    } else {
        format!("{}x{}", res.0, res.1)
    };
    if params.is_empty() {
        format!("{}_{}.{}", family.kind_name(), res, ext)
    } else {
        format!("{}_{}_{}.{}", family.kind_name(), params, res, ext)
    }
}
