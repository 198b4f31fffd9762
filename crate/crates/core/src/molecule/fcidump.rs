//! FCIDUMP reading and writing.
//!
//! Header keys `NORB`, `NELEC`, `MS2` inside a `&FCI ... &END` namelist,
//! then one `value i j k l` record per line with 1-based orbital indices:
//! two-electron `(ij|kl)`, one-electron `i j 0 0`, core energy `0 0 0 0`.

use nalgebra::DMatrix;

use super::fermion::{FermionHamiltonian, MoIntegrals};
use super::integrals::TwoElectron;
use crate::error::{Error, Result};

fn header_value(header: &str, key: &str) -> Option<String> {
    let upper = header.to_ascii_uppercase();
    let mut search = 0;
    while let Some(pos) = upper[search..].find(key) {
        let start = search + pos;
        let before_ok = start == 0 || !upper.as_bytes()[start - 1].is_ascii_alphanumeric();
        let rest = upper[start + key.len()..].trim_start();
        if before_ok {
            if let Some(rest) = rest.strip_prefix('=') {
                let value: String = rest
                    .trim_start()
                    .chars()
                    .take_while(|c| !matches!(c, ',' | '\n' | '&' | '/'))
                    .collect();
                return Some(value.trim().to_string());
            }
        }
        search = start + key.len();
    }
    None
}

fn parse_header_int(header: &str, key: &str, end_line: usize) -> Result<i64> {
    let raw = header_value(header, key).ok_or_else(|| Error::Fcidump {
        line: end_line,
        message: format!("header is missing {key}"),
    })?;
    raw.parse().map_err(|_| Error::Fcidump {
        line: end_line,
        message: format!("{key} is not an integer: {raw:?}"),
    })
}

/// Parses FCIDUMP text into spatial-orbital integrals.
pub fn parse_mo_integrals(text: &str) -> Result<MoIntegrals> {
    let mut header = String::new();
    let mut body_start = None;
    for (i, line) in text.lines().enumerate() {
        header.push_str(line);
        header.push('\n');
        let t = line.trim().to_ascii_uppercase();
        if t == "&END" || t == "/" || t.ends_with("&END") || t == "$END" {
            body_start = Some(i + 1);
            break;
        }
    }
    let body_start = body_start.ok_or_else(|| Error::Fcidump {
        line: text.lines().count().max(1),
        message: "header is not terminated by &END or /".into(),
    })?;
    if !header.to_ascii_uppercase().contains("&FCI") {
        return Err(Error::Fcidump {
            line: 1,
            message: "missing &FCI namelist".into(),
        });
    }

    let norb = parse_header_int(&header, "NORB", body_start)?;
    let nelec = parse_header_int(&header, "NELEC", body_start)?;
    let ms2 = header_value(&header, "MS2")
        .map(|v| {
            v.parse::<i32>().map_err(|_| Error::Fcidump {
                line: body_start,
                message: format!("MS2 is not an integer: {v:?}"),
            })
        })
        .transpose()?
        .unwrap_or(0);
    if norb < 1 {
        return Err(Error::Fcidump {
            line: body_start,
            message: format!("NORB must be positive, got {norb}"),
        });
    }
    if nelec < 0 {
        return Err(Error::Fcidump {
            line: body_start,
            message: format!("NELEC must be non-negative, got {nelec}"),
        });
    }
    let n = norb as usize;

    let mut one_body = DMatrix::zeros(n, n);
    let mut two_body = TwoElectron::zeros(n);
    let mut core_energy = 0.0;
    for (offset, line) in text.lines().skip(body_start).enumerate() {
        let lineno = body_start + offset + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 5 {
            return Err(Error::Fcidump {
                line: lineno,
                message: format!("expected 5 fields, found {}", fields.len()),
            });
        }
        let value: f64 = fields[0].replace(['D', 'd'], "E").parse().map_err(|_| Error::Fcidump {
            line: lineno,
            message: format!("non-numeric value {:?}", fields[0]),
        })?;
        let mut idx = [0usize; 4];
        for (slot, f) in idx.iter_mut().zip(&fields[1..]) {
            let v: i64 = f.parse().map_err(|_| Error::Fcidump {
                line: lineno,
                message: format!("non-numeric index {f:?}"),
            })?;
            if v < 0 || v > norb {
                return Err(Error::Fcidump {
                    line: lineno,
                    message: format!("index {v} outside 0..={norb}"),
                });
            }
            *slot = v as usize;
        }
        match idx {
            [0, 0, 0, 0] => core_energy += value,
            [i, j, 0, 0] if i > 0 && j > 0 => {
                one_body[(i - 1, j - 1)] = value;
                one_body[(j - 1, i - 1)] = value;
            }
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                two_body.set_symmetric(i - 1, j - 1, k - 1, l - 1, value);
            }
            _ => {
                return Err(Error::Fcidump {
                    line: lineno,
                    message: format!("invalid index pattern {idx:?}"),
                })
            }
        }
    }

    Ok(MoIntegrals {
        n_electrons: nelec as usize,
        ms2,
        core_energy,
        one_body,
        two_body,
    })
}

/// Parses FCIDUMP text straight into a spin-orbital Hamiltonian.
pub fn parse_fcidump(text: &str) -> Result<FermionHamiltonian> {
    Ok(parse_mo_integrals(text)?.to_fermion())
}

/// Emits integrals with one record per symmetry-unique index quadruple.
pub fn write_fcidump(mo: &MoIntegrals) -> String {
    let n = mo.n_orbitals();
    let mut out = String::new();
    out.push_str(&format!(" &FCI NORB={n},NELEC={},MS2={},\n", mo.n_electrons, mo.ms2));
    out.push_str(&format!("  ORBSYM={}\n", vec!["1"; n].join(",") + ","));
    out.push_str("  ISYM=1,\n &END\n");
    let pair = |a: usize, b: usize| a * (a + 1) / 2 + b;
    for i in 0..n {
        for j in 0..=i {
            for k in 0..n {
                for l in 0..=k {
                    if pair(i, j) < pair(k, l) {
                        continue;
                    }
                    let v = mo.two_body.get(i, j, k, l);
                    if v != 0.0 {
                        out.push_str(&format!("{v:?} {} {} {} {}\n", i + 1, j + 1, k + 1, l + 1));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..=i {
            let v = mo.one_body[(i, j)];
            if v != 0.0 {
                out.push_str(&format!("{v:?} {} {} 0 0\n", i + 1, j + 1));
            }
        }
    }
    out.push_str(&format!("{:?} 0 0 0 0\n", mo.core_energy));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::molecule::{build_integrals, jordan_wigner, solve_rhf};

    #[test]
    fn constant_only_file() {
        let text = " &FCI NORB=2,NELEC=2,MS2=0,\n &END\n  0.75 0 0 0 0\n";
        let h = parse_fcidump(text).unwrap();
        assert_eq!(h.constant, 0.75);
        assert!(h.one_body.is_empty());
        assert!(h.two_body.is_empty());
    }

    #[test]
    fn round_trip_preserves_ground_energy() {
        let sys = build_integrals(0.7414).unwrap();
        let rhf = solve_rhf(&sys).unwrap();
        let mo = MoIntegrals::from_rhf(&sys, &rhf);
        let direct = jordan_wigner(&mo.to_fermion()).unwrap();
        let text = write_fcidump(&mo);
        let parsed = parse_fcidump(&text).unwrap();
        let reparsed = jordan_wigner(&parsed).unwrap();
        let e_direct = linalg::eigenvalues(&direct.to_matrix())[0];
        let e_parsed = linalg::eigenvalues(&reparsed.to_matrix())[0];
        assert!((e_direct - e_parsed).abs() < 1e-10);
    }

    #[test]
    fn larger_systems_parse_but_do_not_taper() {
        let text = "&FCI NORB=3,NELEC=2,MS2=0\n/\n0.5 1 1 1 1\n-1.0 1 1 0 0\n-0.5 3 3 0 0\n0.1 0 0 0 0\n";
        let h = parse_fcidump(text).unwrap();
        assert_eq!(h.n_spin_orbitals, 6);
        let q = jordan_wigner(&h).unwrap();
        assert!(crate::molecule::taper(&q).is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let missing = " &FCI NELEC=2,\n &END\n";
        assert!(matches!(parse_fcidump(missing), Err(Error::Fcidump { .. })));

        let bad_value = " &FCI NORB=2,NELEC=2,MS2=0,\n &END\n 0.1 1 1 1 1\n abc 1 1 0 0\n";
        match parse_fcidump(bad_value) {
            Err(Error::Fcidump { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }

        let out_of_range = " &FCI NORB=2,NELEC=2,MS2=0,\n &END\n 0.1 3 1 1 1\n";
        match parse_fcidump(out_of_range) {
            Err(Error::Fcidump { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("outside"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let unterminated = " &FCI NORB=2,NELEC=2\n 0.1 1 1 1 1\n";
        assert!(parse_fcidump(unterminated).is_err());
    }
}
