//! Grid dumps.
//!
//! CSV: a `# cdl-grid` comment line carrying the lattice, a header
//! `x0,…,value`, then one row per lattice point in row-major order with
//! `inf` for `+∞`.
//!
//! Binary (little endian):
//!
//! ```text
//! magic   4 bytes  "CDLG"
//! version u32      1
//! dim     u32
//! per axis: lo f64, step f64, count u64
//! prov    u32 length + UTF-8 bytes
//! values  f64 × Π count, row-major; +∞ is the IEEE pattern 0x7FF0000000000000
//! ```

use std::io::{BufRead, BufReader, Read, Write};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use super::{GridFunction, GridSpec, MAX_DIM};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"CDLG";
const VERSION: u32 = 1;

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn join(v: impl Iterator<Item = String>) -> String {
    v.collect::<Vec<_>>().join(",")
}

pub fn write_csv<W: Write>(f: &GridFunction, mut w: W) -> Result<()> {
    let spec = f.spec();
    let n = spec.dim();
    writeln!(
        w,
        "# cdl-grid lo={} step={} counts={} provenance={}",
        join((0..n).map(|k| spec.lo(k).to_string())),
        join(spec.step().iter().map(|h| h.to_string())),
        join(spec.counts().iter().map(|c| c.to_string())),
        f.provenance().replace('\n', " ")
    )
    .map_err(io_err)?;
    writeln!(w, "{},value", join((0..n).map(|k| format!("x{k}")))).map_err(io_err)?;
    for i in 0..spec.len() {
        let v = f.values()[i];
        let v = if v.is_infinite() { "inf".to_string() } else { v.to_string() };
        writeln!(w, "{},{v}", join(spec.point(i).into_iter().map(|x| x.to_string()))).map_err(io_err)?;
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',').map(|t| t.trim().parse().map_err(|_| Error::Format(format!("bad number {t:?}")))).collect()
}

pub fn read_csv<R: Read>(r: R) -> Result<GridFunction> {
    let mut lines = BufReader::new(r).lines();
    let meta = lines.next().ok_or_else(|| Error::Format("empty grid file".into()))?.map_err(io_err)?;
    let meta = meta.strip_prefix("# cdl-grid ").ok_or_else(|| Error::Format("missing cdl-grid header".into()))?;
    let (fields, provenance) = meta.split_once(" provenance=").unwrap_or((meta, ""));
    let mut lo = None;
    let mut step = None;
    let mut counts = None;
    for field in fields.split_whitespace() {
        match field.split_once('=') {
            Some(("lo", v)) => lo = Some(parse_list::<f64>(v)?),
            Some(("step", v)) => step = Some(parse_list::<f64>(v)?),
            Some(("counts", v)) => counts = Some(parse_list::<usize>(v)?),
            _ => return Err(Error::Format(format!("unknown header field {field:?}"))),
        }
    }
    let missing = || Error::Format("incomplete lattice header".into());
    let spec = GridSpec::new(&lo.ok_or_else(missing)?, &step.ok_or_else(missing)?, &counts.ok_or_else(missing)?)?;
    lines.next().ok_or_else(|| Error::Format("missing column header".into()))?.map_err(io_err)?;
    let mut values = Vec::with_capacity(spec.len());
    for line in lines {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        let last = line.rsplit(',').next().unwrap_or("");
        let v = if last == "inf" { f64::INFINITY } else { last.parse().map_err(|_| Error::Format(format!("bad value {last:?}")))? };
        values.push(v);
    }
    GridFunction::new(spec, values, provenance)
}

pub fn write_binary<W: Write>(f: &GridFunction, mut w: W) -> Result<()> {
    let spec = f.spec();
    w.write_all(MAGIC).map_err(io_err)?;
    w.write_u32::<LittleEndian>(VERSION).map_err(io_err)?;
    w.write_u32::<LittleEndian>(spec.dim() as u32).map_err(io_err)?;
    for k in 0..spec.dim() {
        w.write_f64::<LittleEndian>(spec.lo(k)).map_err(io_err)?;
        w.write_f64::<LittleEndian>(spec.step()[k]).map_err(io_err)?;
        w.write_u64::<LittleEndian>(spec.counts()[k] as u64).map_err(io_err)?;
    }
    let prov = f.provenance().as_bytes();
    w.write_u32::<LittleEndian>(prov.len() as u32).map_err(io_err)?;
    w.write_all(prov).map_err(io_err)?;
    for &v in f.values() {
        w.write_f64::<LittleEndian>(v).map_err(io_err)?;
    }
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<GridFunction> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(io_err)?;
    if &magic != MAGIC {
        return Err(Error::Format("not a CDLG grid file".into()));
    }
    let version = r.read_u32::<LittleEndian>().map_err(io_err)?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported grid version {version}")));
    }
    let n = r.read_u32::<LittleEndian>().map_err(io_err)? as usize;
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::Format(format!("bad dimension {n}")));
    }
    let (mut lo, mut step, mut counts) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..n {
        lo.push(r.read_f64::<LittleEndian>().map_err(io_err)?);
        step.push(r.read_f64::<LittleEndian>().map_err(io_err)?);
        counts.push(r.read_u64::<LittleEndian>().map_err(io_err)? as usize);
    }
    let spec = GridSpec::new(&lo, &step, &counts)?;
    let len = r.read_u32::<LittleEndian>().map_err(io_err)? as usize;
    let mut prov = vec![0u8; len];
    r.read_exact(&mut prov).map_err(io_err)?;
    let provenance = String::from_utf8(prov).map_err(|e| Error::Format(e.to_string()))?;
    let mut values = vec![0.0; spec.len()];
    r.read_f64_into::<LittleEndian>(&mut values).map_err(io_err)?;
    GridFunction::new(spec, values, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GridFunction {
        let spec = GridSpec::symmetric(2, 1.0, 0.25).unwrap();
        GridFunction::from_fn(spec, |x| if x[0] > 0.6 { f64::INFINITY } else { x[0].abs() + 2.0 * x[1] * x[1] }, "test, with comma").unwrap()
    }

    #[test]
    fn csv_round_trip() {
        let f = sample();
        let mut buf = Vec::new();
        write_csv(&f, &mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), f);
    }

    #[test]
    fn binary_round_trip_and_magic() {
        let f = sample();
        let mut buf = Vec::new();
        write_binary(&f, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"CDLG");
        assert_eq!(read_binary(buf.as_slice()).unwrap(), f);
        buf[0] = b'X';
        assert!(matches!(read_binary(buf.as_slice()), Err(Error::Format(_))));
    }
}
