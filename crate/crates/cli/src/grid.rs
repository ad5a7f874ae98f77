//! Parsing of comma lists with inclusive integer ranges, e.g. `2-20,50,100`.

use crate::error::CliError;

pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for item in items(text)? {
        match item.split_once('-') {
            Some((lo, hi)) => {
                let lo = parse_usize(lo)?;
                let hi = parse_usize(hi)?;
                if lo > hi {
                    return Err(CliError::usage(format!("empty range '{item}'")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse_usize(item)?),
        }
    }
    Ok(out)
}

/// Reals only; a `-` here is a sign, not a range.
pub fn parse_f64_list(text: &str) -> Result<Vec<f64>, CliError> {
    items(text)?
        .into_iter()
        .map(|item| {
            let x: f64 = item
                .parse()
                .map_err(|_| CliError::usage(format!("'{item}' is not a number")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(CliError::usage(format!("'{item}' is not finite")))
            }
        })
        .collect()
}

fn items(text: &str) -> Result<Vec<&str>, CliError> {
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(CliError::usage(format!("malformed list '{text}'")));
    }
    Ok(items)
}

fn parse_usize(s: &str) -> Result<usize, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::usage(format!("'{s}' is not a non-negative integer")))
}
