//! Chain ingestion: CSV with header `m,K`, one row per mass. Row `j` holds
//! `m_j` and the spring `K_j` joining masses `j` and `j+1`; the last row's
//! `K` is empty or omitted.

use std::io::Read;

use bellissard::{ChainBoundary, ChainSpec};

use crate::Failure;

pub fn read_chain<R: Read>(input: R, boundary: ChainBoundary) -> Result<ChainSpec, Failure> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = reader.headers().map_err(Failure::io)?.clone();
    if header.get(0) != Some("m") || header.get(1).map_or(false, |h| h != "K") {
        return Err(Failure("chain CSV must start with the header m,K".into()));
    }
    let mut masses = Vec::new();
    let mut springs = Vec::new();
    let mut open_end = false;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(Failure::io)?;
        let line = i + 2;
        if open_end {
            return Err(Failure(format!(
                "chain CSV line {}: only the last row may omit K",
                line - 1
            )));
        }
        let m = record
            .get(0)
            .ok_or_else(|| Failure(format!("chain CSV line {line}: missing m")))?;
        masses.push(number(m, line)?);
        match record.get(1).filter(|k| !k.is_empty()) {
            Some(k) => springs.push(number(k, line)?),
            None => open_end = true,
        }
    }
    if !open_end {
        return Err(Failure("chain CSV: the last row must leave K empty".into()));
    }
    Ok(ChainSpec::new(masses, springs, boundary)?)
}

fn number(text: &str, line: usize) -> Result<f64, Failure> {
    text.parse::<f64>().map_err(|_| {
        Failure(format!(
            "chain CSV line {line}: cannot parse {text:?} as a number"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_pair() {
        let c = read_chain("m,K\n1,4\n2,\n".as_bytes(), ChainBoundary::Free).unwrap();
        assert_eq!(c.masses(), &[1.0, 2.0]);
        assert_eq!(c.springs(), &[4.0]);
        let c = read_chain("m,K\n1,4\n2\n".as_bytes(), ChainBoundary::Free).unwrap();
        assert_eq!(c.springs(), &[4.0]);
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            "x,y\n1,\n",
            "m,K\n1,4\n2,3\n",
            "m,K\n1,\n2,\n",
            "m,K\n1,a\n2,\n",
            "m,K\n-1,1\n1,\n",
        ] {
            assert!(
                read_chain(text.as_bytes(), ChainBoundary::Free).is_err(),
                "{text:?}"
            );
        }
    }
}
