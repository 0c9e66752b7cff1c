//! Plot-ready CSV output.
//!
//! Numbers are written like C's `%.12g`, so files are byte-stable across
//! platforms and easy to diff.

use std::io::{Read, Write};

use crate::enumerate::CircleSet;
use crate::stats::{EnergyValue, StatSeries};

/// Significant digits used for every number in the CSV outputs.
pub const CSV_DIGITS: usize = 12;

/// Formats `x` the way C's `printf("%.{precision}g", x)` does.
pub fn format_g(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    let p = precision.max(1);
    // Rounding to p significant digits fixes the exponent C uses to choose
    // between fixed and scientific notation.
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%.12g`
pub fn fmt_num(x: f64) -> String {
    format_g(x, CSV_DIGITS)
}

/// Circle dump: `k,re,im,r`, one circle per row in the set's order.
pub fn write_circles<W: Write>(out: W, set: &CircleSet) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "re", "im", "r"])?;
    for c in set.circles() {
        // `+ 0.0` turns the bounding circle's `-0` center into `0`.
        let z = c.center();
        let z = (z.re + 0.0, z.im + 0.0);
        w.write_record([
            fmt_num(c.k),
            fmt_num(z.0),
            fmt_num(z.1),
            fmt_num(c.radius()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Series: `s,value`.
pub fn write_series<W: Write>(out: W, series: &StatSeries) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["s", "value"])?;
    for (s, v) in series.s_grid.iter().zip(&series.values) {
        w.write_record([fmt_num(*s), fmt_num(*v)])?;
    }
    w.flush()?;
    Ok(())
}

/// Energy sweep: `T,G,rel_change`, where `rel_change` is
/// `|G(Tᵢ) - G(Tᵢ₋₁)| / G(Tᵢ₋₁)` and empty on the first row.
pub fn write_energy<W: Write>(out: W, values: &[EnergyValue]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["T", "G", "rel_change"])?;
    for (i, e) in values.iter().enumerate() {
        let change = match i {
            0 => String::new(),
            _ => {
                let prev = values[i - 1].value;
                fmt_num((e.value - prev).abs() / prev)
            }
        };
        w.write_record([fmt_num(e.bound), fmt_num(e.value), change])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an `s,value` file back into `(s, value)` pairs.
pub fn read_series<R: Read>(input: R) -> csv::Result<Vec<(f64, f64)>> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for record in r.deserialize() {
        rows.push(record?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        // Expected strings from printf("%.12g").
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-1.0, "-1"),
            (0.5, "0.5"),
            (1.0 / 3.0, "0.333333333333"),
            (2.0 / 3.0, "0.666666666667"),
            (2.1547005383792515, "2.15470053838"),
            (100.0, "100"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (1e-300, "1e-300"),
            (0.15000000000000002, "0.15"),
            (999999999999.5, "1e+12"),
            (f64::NAN, "nan"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g(x, 12), want, "{x}");
        }
        assert_eq!(format_g(1.23456, 3), "1.23");
    }

    #[test]
    fn energy_rows_carry_relative_change() {
        let vals = [
            EnergyValue {
                bound: 100.0,
                value: 2.0,
            },
            EnergyValue {
                bound: 200.0,
                value: 2.5,
            },
        ];
        let mut buf = Vec::new();
        write_energy(&mut buf, &vals).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "T,G,rel_change\n100,2,\n200,2.5,0.25\n"
        );
    }
}
