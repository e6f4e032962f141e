//! Factorisation files, as JSON lines.
//!
//! Line 1 is a [`FileHeader`]. An explicit file then has one [`FactorLine`]
//! per factor, listing its canonical edges as `[lo, direction]` with `lo` in
//! the vertex text form. An implicit file is the header alone; loading it
//! rebuilds the local evaluator from the recorded parameters and seed.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analyze::ConstructionKind;
use crate::code::{build_context, CodeContext};
use crate::construct::{
    ConstructionParams, ExplicitFactorisation, Factorisation, ImplicitFactorisation, Mode,
};
use crate::cube::{Edge, Vertex};
use crate::error::{Error, Result};
use crate::tape::RandomTape;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FileHeader {
    pub d: u32,
    pub k: u32,
    #[serde(rename = "X")]
    pub x: Vec<u64>,
    pub kind: ConstructionKind,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub params: Option<ConstructionParams>,
}

impl FileHeader {
    pub fn new(
        ctx: &CodeContext,
        kind: ConstructionKind,
        mode: Mode,
        seed: Option<u64>,
        params: Option<ConstructionParams>,
    ) -> Self {
        let desc = ctx.describe();
        FileHeader {
            d: desc.d,
            k: desc.k,
            x: desc.x,
            kind,
            mode,
            seed,
            params,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorLine {
    pub factor: usize,
    pub direction: u64,
    pub edges: Vec<(String, u64)>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn write_factorisation<W: Write>(
    mut out: W,
    header: &FileHeader,
    fac: &Factorisation,
) -> Result<()> {
    let io = |e: serde_json::Error| Error::Io(e.to_string());
    serde_json::to_writer(&mut out, header).map_err(io)?;
    out.write_all(b"\n")?;
    if let Factorisation::Explicit(f) = fac {
        let space = f.ctx().space();
        let d = f.ctx().d();
        for x in 0..f.d() {
            let line = FactorLine {
                factor: x,
                direction: space.direction(x).0,
                edges: f
                    .factor_edges(x)
                    .map(|e| (e.lo.to_bit_string(d), space.direction(e.dir).0))
                    .collect(),
            };
            serde_json::to_writer(&mut out, &line).map_err(io)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_factorisation<R: BufRead>(input: R) -> Result<(FileHeader, Factorisation)> {
    let mut lines = input.lines();
    let first = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty file"))??;
    let header: FileHeader =
        serde_json::from_str(&first).map_err(|e| parse_error(1, e.to_string()))?;
    let ctx = build_context(header.d).map_err(|e| parse_error(1, e.to_string()))?;
    let desc = ctx.describe();
    if header.k != desc.k || header.x != desc.x {
        return Err(parse_error(1, "k or X does not match the direction set for d"));
    }

    if header.mode == Mode::Implicit {
        let (Some(params), Some(seed)) = (header.params, header.seed) else {
            return Err(parse_error(1, "implicit file needs params and seed"));
        };
        if let Some(extra) = lines.next() {
            if !extra?.trim().is_empty() {
                return Err(parse_error(2, "implicit file has no factor lines"));
            }
        }
        let f = ImplicitFactorisation::new(&ctx, &params, &RandomTape::new(seed))
            .map_err(|e| parse_error(1, e.to_string()))?;
        return Ok((header, Factorisation::Implicit(f)));
    }

    let mut fac = ExplicitFactorisation::empty(&ctx).map_err(|e| parse_error(1, e.to_string()))?;
    let space = ctx.space();
    let d = ctx.d();
    for (i, line) in lines.enumerate() {
        let n = i + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fl: FactorLine = serde_json::from_str(&line).map_err(|e| parse_error(n, e.to_string()))?;
        if fl.factor >= d as usize || space.direction(fl.factor).0 != fl.direction {
            return Err(parse_error(n, format!("factor {} / direction {} mismatch", fl.factor, fl.direction)));
        }
        for (lo, dir) in &fl.edges {
            if lo.len() != d as usize {
                return Err(parse_error(n, format!("vertex {lo:?} is not {d} characters")));
            }
            let lo: Vertex = lo.parse().map_err(|e: Error| parse_error(n, e.to_string()))?;
            let dir = space
                .position(crate::gf2::Gf2Vec(*dir))
                .map_err(|e| parse_error(n, e.to_string()))?;
            fac.assign_edge(Edge::at(lo, dir), fl.factor);
        }
    }
    Ok((header, Factorisation::Explicit(fac)))
}

pub fn save(path: &Path, header: &FileHeader, fac: &Factorisation) -> Result<()> {
    write_factorisation(BufWriter::new(File::create(path)?), header, fac)
}

pub fn load(path: &Path) -> Result<(FileHeader, Factorisation)> {
    read_factorisation(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyze::validate;
    use crate::construct::directional;

    fn directional_bytes(d: u32) -> Vec<u8> {
        let ctx = build_context(d).unwrap();
        let fac = Factorisation::Explicit(directional(&ctx).unwrap());
        let header = FileHeader::new(&ctx, ConstructionKind::Directional, Mode::Explicit, None, None);
        let mut buf = Vec::new();
        write_factorisation(&mut buf, &header, &fac).unwrap();
        buf
    }

    #[test]
    fn round_trip() {
        let buf = directional_bytes(5);
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 6);
        assert!(text.starts_with(r#"{"d":5,"k":3,"X":[1,2,3,4,7],"#));
        let (_, fac) = read_factorisation(buf.as_slice()).unwrap();
        let ctx = build_context(5).unwrap();
        assert!(fac.as_explicit().unwrap() == &directional(&ctx).unwrap());
        assert!(validate(&fac).unwrap().ok);
    }

    #[test]
    fn parse_error_has_line() {
        let text = String::from_utf8(directional_bytes(4)).unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        lines[2] = "{not json";
        let broken = lines.join("\n");
        match read_factorisation(broken.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            read_factorisation("".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn missing_factor_fails_validation() {
        let text = String::from_utf8(directional_bytes(4)).unwrap();
        let lines: Vec<&str> = text.lines().take(4).collect();
        let (_, fac) = read_factorisation(lines.join("\n").as_bytes()).unwrap();
        assert!(!validate(&fac).unwrap().ok);
    }
}
