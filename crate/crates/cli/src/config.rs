//! `--config manifest.json`: a command and its flags as JSON,
//! `{"command": "arrows", "args": {"host": "K6", "red": "K3", "blue": "K3"}}`.
//!
//! Each `args` entry becomes `--key value`; `true` becomes a bare flag,
//! `false` and `null` are dropped, arrays are comma-joined and objects are
//! passed as JSON text. Flags given on the command line win.

use std::ffi::OsString;

use serde_json::Value;

/// Rewrites `argv` when it carries `--config`; otherwise returns it unchanged.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(pos) = argv.iter().position(|a| a == "--config" || a.to_string_lossy().starts_with("--config=")) else {
        return Ok(argv);
    };
    let flag = argv[pos].to_string_lossy().into_owned();
    let (path, consumed) = match flag.strip_prefix("--config=") {
        Some(p) => (p.to_string(), 1),
        None => (
            argv.get(pos + 1)
                .ok_or("--config needs a file")?
                .to_string_lossy()
                .into_owned(),
            2,
        ),
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| format!("config {path} is not valid JSON: {e}"))?;
    let command = doc
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| format!("config {path} needs a string \"command\""))?;
    let mut out: Vec<OsString> = vec![argv[0].clone(), command.into()];
    if let Some(args) = doc.get("args") {
        let args = args
            .as_object()
            .ok_or_else(|| format!("config {path}: \"args\" must be an object"))?;
        for (key, value) in args {
            let flag = format!("--{key}");
            match value {
                Value::Bool(true) => out.push(flag.into()),
                Value::Bool(false) | Value::Null => {}
                Value::String(s) => out.extend([flag.into(), s.into()]),
                Value::Number(n) => out.extend([flag.into(), n.to_string().into()]),
                Value::Array(items) => {
                    let joined = items
                        .iter()
                        .map(|v| match v {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                        .collect::<Vec<_>>()
                        .join(",");
                    out.extend([flag.into(), joined.into()]);
                }
                Value::Object(_) => out.extend([flag.into(), value.to_string().into()]),
            }
        }
    }
    let mut rest: Vec<OsString> = argv[1..pos].to_vec();
    rest.extend(argv[pos + consumed..].iter().cloned());
    // a repeated subcommand name on the command line is dropped
    if rest.first().is_some_and(|a| a == command) {
        rest.remove(0);
    }
    out.extend(rest);
    Ok(out)
}
