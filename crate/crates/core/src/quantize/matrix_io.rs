//! Dense complex matrix exchange formats.
//!
//! Binary layout (all integers `u64` little-endian, all reals `f64` little-endian):
//!
//! ```text
//! magic  b"CMATv001"
//! rows, cols
//! leg_count, then per leg: kind (0 alpha, 1 beta, 2 level, 3 dipole, 4 fock), cutoff
//! rows*cols entries in row-major order, each as (re, im)
//! ```
//!
//! Text layout: a `CMAT text v1` line, a `rows cols` line, a `legs ...` line
//! listing leg names (`alpha`, `beta`, `level`, `dipole`, `fock:N`), then one line
//! per row with `re im` pairs separated by spaces. Reals use the shortest
//! representation that round-trips exactly.

use std::io::{BufRead, Read, Write};

use super::{Layout, Leg, OperatorMatrix};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::Complex64;

pub const MAGIC: &[u8; 8] = b"CMATv001";
const TEXT_HEADER: &str = "CMAT text v1";

fn leg_code(leg: Leg) -> (u64, u64) {
    match leg {
        Leg::Alpha => (0, 0),
        Leg::Beta => (1, 0),
        Leg::Level => (2, 0),
        Leg::Dipole => (3, 0),
        Leg::Fock(n) => (4, n as u64),
    }
}

fn leg_from_code(kind: u64, cutoff: u64) -> Result<Leg> {
    Ok(match kind {
        0 => Leg::Alpha,
        1 => Leg::Beta,
        2 => Leg::Level,
        3 => Leg::Dipole,
        4 => Leg::Fock(cutoff as usize),
        _ => return Err(Error::MatrixFormat(format!("unknown leg code {kind}"))),
    })
}

pub fn write_binary(op: &OperatorMatrix, mut w: impl Write) -> Result<()> {
    let m = op.matrix();
    w.write_all(MAGIC)?;
    for v in [m.nrows() as u64, m.ncols() as u64, op.layout().legs().len() as u64] {
        w.write_all(&v.to_le_bytes())?;
    }
    for &leg in op.layout().legs() {
        let (kind, cutoff) = leg_code(leg);
        w.write_all(&kind.to_le_bytes())?;
        w.write_all(&cutoff.to_le_bytes())?;
    }
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            w.write_all(&m[(i, j)].re.to_le_bytes())?;
            w.write_all(&m[(i, j)].im.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)
        .map_err(|_| Error::MatrixFormat("truncated header".into()))?;
    Ok(u64::from_le_bytes(b))
}

pub fn read_binary(mut r: impl Read) -> Result<OperatorMatrix> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)
        .map_err(|_| Error::MatrixFormat("missing magic".into()))?;
    if &magic != MAGIC {
        return Err(Error::MatrixFormat("bad magic".into()));
    }
    let rows = read_u64(&mut r)? as usize;
    let cols = read_u64(&mut r)? as usize;
    let nlegs = read_u64(&mut r)? as usize;
    if nlegs > 16 {
        return Err(Error::MatrixFormat(format!("implausible leg count {nlegs}")));
    }
    let mut legs = Vec::with_capacity(nlegs);
    for _ in 0..nlegs {
        let kind = read_u64(&mut r)?;
        let cutoff = read_u64(&mut r)?;
        legs.push(leg_from_code(kind, cutoff)?);
    }
    let layout = Layout::new(legs)?;
    if rows != layout.dim() || cols != layout.dim() {
        return Err(Error::MatrixFormat(format!(
            "{rows}x{cols} does not match layout {layout}"
        )));
    }
    let mut buf = vec![0u8; rows * cols * 16];
    r.read_exact(&mut buf)
        .map_err(|_| Error::MatrixFormat("truncated body".into()))?;
    let f = |k: usize| f64::from_le_bytes(buf[8 * k..8 * k + 8].try_into().expect("8 bytes"));
    let m = CMatrix::from_fn(rows, cols, |i, j| {
        let k = 2 * (i * cols + j);
        Complex64::new(f(k), f(k + 1))
    });
    OperatorMatrix::new(m, layout)
}

pub fn write_text(op: &OperatorMatrix, mut w: impl Write) -> Result<()> {
    let m = op.matrix();
    writeln!(w, "{TEXT_HEADER}")?;
    writeln!(w, "{} {}", m.nrows(), m.ncols())?;
    let legs: Vec<String> = op.layout().legs().iter().map(|l| l.to_string()).collect();
    writeln!(w, "legs {}", legs.join(" "))?;
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{} {}", m[(i, j)].re, m[(i, j)].im))
            .collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn read_text(r: impl BufRead) -> Result<OperatorMatrix> {
    let bad = |what: &str| Error::MatrixFormat(what.to_string());
    let mut lines = r.lines();
    let mut next = || -> Result<String> { lines.next().ok_or_else(|| bad("unexpected end of input"))?.map_err(Error::from) };
    if next()?.trim() != TEXT_HEADER {
        return Err(bad("bad text header"));
    }
    let dims: Vec<usize> = next()?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("bad dimensions")))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(bad("expected `rows cols`"));
    };
    let legs_line = next()?;
    let legs = legs_line
        .strip_prefix("legs")
        .ok_or_else(|| bad("missing legs line"))?
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<Vec<Leg>>>()?;
    let layout = Layout::new(legs)?;
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        let vals: Vec<f64> = next()?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad number")))
            .collect::<Result<_>>()?;
        if vals.len() != 2 * cols {
            return Err(bad("row has the wrong number of entries"));
        }
        for j in 0..cols {
            m[(i, j)] = Complex64::new(vals[2 * j], vals[2 * j + 1]);
        }
    }
    OperatorMatrix::new(m, layout).map_err(|e| Error::MatrixFormat(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantize::{fock_operators, level_pauli, tensor_lift};

    fn sample() -> OperatorMatrix {
        let (s3, _, _) = level_pauli();
        let (a, _, _) = fock_operators(3).unwrap();
        let target = Layout::new(vec![Leg::Level, Leg::Dipole, Leg::Fock(3)]).unwrap();
        let x = tensor_lift(&s3.kron(&a).unwrap(), &target).unwrap();
        x.scale_c(Complex64::new(0.1, -1.0 / 3.0))
    }

    #[test]
    fn binary_round_trip_is_exact() {
        let op = sample();
        let mut buf = Vec::new();
        write_binary(&op, &mut buf).unwrap();
        assert_eq!(&buf[..8], MAGIC);
        assert_eq!(buf.len(), 8 + 24 + 3 * 16 + 16 * 16 * 16);
        assert_eq!(read_binary(&buf[..]).unwrap(), op);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let op = sample();
        let mut buf = Vec::new();
        write_text(&op, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("CMAT text v1\n16 16\nlegs level dipole fock:3\n"));
        assert_eq!(read_text(&buf[..]).unwrap(), op);
    }

    #[test]
    fn corrupt_inputs_are_rejected() {
        let op = sample();
        let mut buf = Vec::new();
        write_binary(&op, &mut buf).unwrap();
        assert!(read_binary(&buf[..buf.len() - 1]).is_err());
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(read_binary(&bad[..]).is_err());
        assert!(read_text("CMAT text v1\n2 2\nlegs level\n0 0 1 0\n".as_bytes()).is_err());
    }
}
