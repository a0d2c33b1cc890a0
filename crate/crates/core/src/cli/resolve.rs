//! Graph and code arguments: builtin names or JSON files.

use serde_json::{json, Value};

use super::CliError;
use crate::graphstate::{Graph, GraphSpec};
use crate::tentpeg::{build_cr_default, build_cu_default, CodeSpec, LinearCode, MatrixKind};

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| CliError::Parse(format!("bad {what} {s:?}")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))
}

/// `c5`, `p3`, `k3`, `cycle:N`, `path:N`, `complete:N`, `lattice:15`,
/// `lattice:8x8`, or a path to a JSON graph file.
pub fn resolve_graph(arg: &str) -> Result<(Graph, Value), CliError> {
    let g = match arg.split_once(':') {
        None => match arg {
            "c5" => Graph::cycle(5)?,
            "p3" => Graph::path(3),
            "k3" => Graph::complete(3),
            path => Graph::from_spec(&read_json::<GraphSpec>(path)?)?,
        },
        Some(("cycle", n)) => Graph::cycle(number(n, "cycle length")?)?,
        Some(("path", n)) => Graph::path(number(n, "path length")?),
        Some(("complete", n)) => Graph::complete(number(n, "vertex count")?),
        Some(("lattice", dims)) => {
            let dims = dims
                .split('x')
                .map(|d| number(d, "lattice side"))
                .collect::<Result<Vec<usize>, _>>()?;
            Graph::lattice(&dims)?
        }
        Some(_) => Graph::from_spec(&read_json::<GraphSpec>(arg)?)?,
    };
    let echo = json!({ "name": arg, "spec": g.to_spec() });
    Ok((g, echo))
}

/// `rep5`, `repetition:N`, `cr:R`, `cu:R`, `rows:110,011` (generator rows),
/// `parity:110,011`, or a path to a JSON code file.
pub fn resolve_code(arg: &str) -> Result<(LinearCode, Value), CliError> {
    let rows = |s: &str| s.split(',').map(str::to_string).collect::<Vec<_>>();
    let code = match arg.split_once(':') {
        None if arg == "rep5" => LinearCode::repetition(5),
        None => LinearCode::from_spec(&read_json::<CodeSpec>(arg)?)?,
        Some(("repetition", n)) => LinearCode::repetition(number(n, "length")?),
        Some(("cr", r)) => build_cr_default(number(r, "r")?)?,
        Some(("cu", r)) => build_cu_default(number(r, "r")?)?,
        Some((kind @ ("rows" | "parity"), body)) => {
            let rows = rows(body);
            let n = rows.first().map_or(0, String::len);
            let kind = if kind == "rows" {
                MatrixKind::Generator
            } else {
                MatrixKind::Parity
            };
            LinearCode::from_spec(&CodeSpec { n, rows, kind })?
        }
        Some(_) => LinearCode::from_spec(&read_json::<CodeSpec>(arg)?)?,
    };
    let echo = code_echo(arg, &code);
    Ok((code, echo))
}

/// The smaller of the two matrix forms.
pub(crate) fn compact_spec(code: &LinearCode) -> CodeSpec {
    if code.n() - code.k() < code.k() {
        code.to_spec(MatrixKind::Parity)
    } else {
        code.to_spec(MatrixKind::Generator)
    }
}

pub(crate) fn code_echo(name: &str, code: &LinearCode) -> Value {
    json!({ "name": name, "origin": code.origin(), "spec": compact_spec(code) })
}
