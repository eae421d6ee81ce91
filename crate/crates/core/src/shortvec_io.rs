//! Binary cache for vector lists of `O³`.
//!
//! Layout: the magic `OCTAV1`, the vector count as `u64`, the dimension as
//! `u64`, the denominator exponent `e` as `u64`, then every vector as `dim`
//! little-endian `i64` numerators of its standard coordinates over `2^e`.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::half::HalfOct;
use crate::lattice;

pub const MAGIC: &[u8; 6] = b"OCTAV1";

/// Standard coordinates of ring elements are halves, so `e = 1`.
const EXPONENT: u64 = 1;

/// Writes α-coordinate vectors of `O^n`.
pub fn write_vectors<W: Write>(mut w: W, vectors: &[Vec<i64>]) -> std::io::Result<()> {
    let dim = vectors.first().map_or(0, Vec::len);
    w.write_all(MAGIC)?;
    w.write_all(&(vectors.len() as u64).to_le_bytes())?;
    w.write_all(&(dim as u64).to_le_bytes())?;
    w.write_all(&EXPONENT.to_le_bytes())?;
    let mut buf = Vec::with_capacity(8 * dim);
    for v in vectors {
        buf.clear();
        for o in lattice::to_octs(v) {
            for x in o.0 {
                buf.extend_from_slice(&x.to_le_bytes());
            }
        }
        w.write_all(&buf)?;
    }
    w.flush()
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)
        .map_err(|e| Error::Parse(format!("truncated cache: {e}")))?;
    Ok(u64::from_le_bytes(b))
}

/// Reads vectors back as α-coordinates. Rejects foreign or stale files.
pub fn read_vectors<R: Read>(mut r: R) -> Result<Vec<Vec<i64>>> {
    let mut magic = [0u8; 6];
    r.read_exact(&mut magic)
        .map_err(|e| Error::Parse(format!("truncated cache: {e}")))?;
    if &magic != MAGIC {
        return Err(Error::Parse(format!(
            "cache header {:?} is not {:?}",
            String::from_utf8_lossy(&magic),
            String::from_utf8_lossy(MAGIC)
        )));
    }
    let count = read_u64(&mut r)?;
    let dim = read_u64(&mut r)? as usize;
    let exp = read_u64(&mut r)?;
    if dim % 8 != 0 || exp > 62 {
        return Err(Error::Parse(format!("cache has dimension {dim} and exponent {exp}")));
    }
    let scale = 1i64 << exp;
    let mut out = Vec::with_capacity(count.min(1 << 24) as usize);
    let mut bytes = vec![0u8; 8 * dim];
    for _ in 0..count {
        r.read_exact(&mut bytes)
            .map_err(|e| Error::Parse(format!("truncated cache: {e}")))?;
        let nums: Vec<i64> = bytes
            .chunks(8)
            .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let octs = nums
            .chunks(8)
            .map(|c| {
                // numerators over 2^exp to doubled coordinates
                let mut d = [0i64; 8];
                for (slot, &x) in d.iter_mut().zip(c) {
                    let t = x * 2;
                    if t % scale != 0 {
                        return Err(Error::Parse("cache entry is not half-integral".into()));
                    }
                    *slot = t / scale;
                }
                Ok(HalfOct(d))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(lattice::from_octs(&octs).ok_or_else(|| Error::Parse("cache entry outside O^n".into()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let v = vec![vec![1i64, 0, 0, 0, 0, 0, 0, -2], vec![0, 3, 0, 0, 0, 0, 1, 0]];
        let mut buf = Vec::new();
        write_vectors(&mut buf, &v).unwrap();
        assert_eq!(&buf[..6], MAGIC);
        assert_eq!(read_vectors(&buf[..]).unwrap(), v);
        let mut bad = buf.clone();
        bad[5] = b'0';
        assert!(read_vectors(&bad[..]).is_err());
        assert!(read_vectors(&buf[..buf.len() - 3]).is_err());
    }
}
