//! CSV writing: `#` comment lines, a header row, and numbers with 17
//! significant digits.

use csv::{QuoteStyle, WriterBuilder};

use crate::CliError;

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv(comments: &[String], header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    let mut w = WriterBuilder::new().quote_style(QuoteStyle::Necessary).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn comments_then_records() {
        let s = csv(&["v 1".into()], &["a", "b"], &[vec!["1".into(), "x,y".into()]]).unwrap();
        assert_eq!(s, "# v 1\na,b\n1,\"x,y\"\n");
    }
}
