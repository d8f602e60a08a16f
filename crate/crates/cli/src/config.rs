//! `--config` files: flat `key=value` lines mirroring the command-line flags.
//! Values from the file are spliced in right after the subcommand, so flags
//! given on the command line take precedence.

use std::fs;

/// Location of `--config` in `argv`, in either `--config PATH` or
/// `--config=PATH` form.
fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Turns the lines of a config file into `--key=value` tokens. Blank lines
/// and lines starting with `#` are skipped.
pub fn tokens(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", n + 1))?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(format!("line {}: empty key", n + 1));
        }
        if key == "config" {
            return Err(format!("line {}: config files cannot include other config files", n + 1));
        }
        out.push(format!("--{key}={}", value.trim()));
    }
    Ok(out)
}

/// `argv` with the contents of the config file (if any) spliced in.
pub fn expand(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config file `{path}`: {e}"))?;
    let extra = tokens(&text)?;
    if args.len() < 2 || args[1].starts_with('-') {
        return Ok(args);
    }
    let mut out = args[..2].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[2..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn parses_lines() {
        let t = tokens("# comment\n\ntheta = a2\nmu=1,2,3\n").unwrap();
        assert_eq!(t, s(&["--theta=a2", "--mu=1,2,3"]));
        assert!(tokens("theta").is_err());
        assert!(tokens("config=x").is_err());
    }

    #[test]
    fn finds_path() {
        assert_eq!(config_path(&s(&["g", "metric", "--config", "a.txt"])).as_deref(), Some("a.txt"));
        assert_eq!(config_path(&s(&["g", "metric", "--config=b"])).as_deref(), Some("b"));
        assert_eq!(config_path(&s(&["g", "metric"])), None);
    }
}
