use std::io::Write;
use std::path::Path;

use super::BerRecord;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "detector,L,N,snr_db,bits,errors,ber,adds_per_symbol_mean,adds_per_symbol_max";

pub fn write_csv<W: Write>(records: &[BerRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.detector,
            r.l,
            r.n,
            r.snr_db,
            r.bits,
            r.errors,
            r.ber,
            r.adds_per_symbol_mean,
            r.adds_per_symbol_max
        )?;
    }
    Ok(())
}

pub fn emit_csv(records: &[BerRecord], path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    write_csv(records, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn parse_csv(text: &str) -> Result<Vec<BerRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: "missing CSV header".into(),
            })
        }
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, line)| {
            let err = |msg: String| Error::Parse { line: n + 1, msg };
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 9 {
                return Err(err(format!("expected 9 fields, got {}", f.len())));
            }
            let num = |i: usize| {
                f[i].parse::<f64>()
                    .map_err(|e| err(format!("{}: {e}", f[i])))
            };
            let int = |i: usize| {
                f[i].parse::<u64>()
                    .map_err(|e| err(format!("{}: {e}", f[i])))
            };
            Ok(BerRecord {
                detector: f[0].parse()?,
                l: int(1)? as usize,
                n: int(2)? as usize,
                snr_db: num(3)?,
                bits: int(4)?,
                errors: int(5)?,
                ber: num(6)?,
                adds_per_symbol_mean: num(7)?,
                adds_per_symbol_max: num(8)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detectors::DetectorKind;

    fn record(d: DetectorKind, snr: f64) -> BerRecord {
        BerRecord {
            detector: d,
            l: 10,
            n: 100,
            snr_db: snr,
            bits: 20_000,
            errors: 213,
            ber: 213.0 / 20_000.0,
            adds_per_symbol_mean: 7.123456789,
            adds_per_symbol_max: 204.8,
        }
    }

    #[test]
    fn header_only_for_no_records() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn roundtrip() {
        let recs = vec![
            record(DetectorKind::Dd, 8.0),
            record(DetectorKind::MsddNoSort, 10.5),
            record(DetectorKind::Va, f64::INFINITY),
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ber.csv");
        emit_csv(&recs, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(parse_csv(&text).unwrap(), recs);
        assert!(parse_csv("nope\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\ndd,1,2\n")).is_err());
    }
}
