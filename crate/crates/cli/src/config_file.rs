use std::ffi::OsString;
use std::path::Path;

use crate::args::Command;
use crate::error::CliError;

/// `key = value` lines as `--key=value` flags. Blank lines and `#` comments
/// are skipped; a leading `--` on the key is optional.
pub fn parse(text: &str, path: &Path) -> Result<Vec<OsString>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("{}:{}: expected `key = value`", path.display(), i + 1))
        })?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() || key == "config" {
            return Err(CliError::Usage(format!("{}:{}: bad key `{key}`", path.display(), i + 1)));
        }
        out.push(format!("--{key}={}", value.trim()).into());
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<(usize, usize, OsString)> {
    args.iter().enumerate().find_map(|(i, a)| {
        let s = a.to_str()?;
        if s == "--config" {
            args.get(i + 1).map(|v| (i, 2, v.clone()))
        } else {
            s.strip_prefix("--config=").map(|v| (i, 1, v.into()))
        }
    })
}

/// Splices the flags of a `--config` file in right after the subcommand,
/// so later command-line flags override them.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some((at, len, path)) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path).to_path_buf();
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let extra = parse(&text, &path)?;
    let mut args = args;
    args.drain(at..at + len);
    let sub = args
        .iter()
        .position(|a| a.to_str().is_some_and(|s| Command::NAMES.contains(&s)))
        .ok_or_else(|| CliError::Usage("--config needs a subcommand".into()))?;
    args.splice(sub + 1..sub + 1, extra);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(Into::into).collect()
    }

    #[test]
    fn parses_pairs_and_comments() {
        let got = parse("# header\nmodel = tfim\n--n=20  # spins\n\nsigma = 0:1:5\n", Path::new("c")).unwrap();
        assert_eq!(got, os(&["--model=tfim", "--n=20", "--sigma=0:1:5"]));
        assert!(parse("model tfim", Path::new("c")).is_err());
        assert!(parse("config = x", Path::new("c")).is_err());
    }

    #[test]
    fn splices_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("run.conf");
        std::fs::write(&file, "n = 8\nomega = 2\n").unwrap();
        let args = os(&["critqfi", "--config", file.to_str().unwrap(), "qfim", "--n", "4"]);
        let got = expand(args).unwrap();
        assert_eq!(got, os(&["critqfi", "qfim", "--n=8", "--omega=2", "--n", "4"]));
        assert!(expand(os(&["critqfi", "--config=/nonexistent/x", "qfim"])).is_err());
    }
}
