use mts_spectrum::{Mts, StateId, StateSet};

use crate::error::CliError;

fn state(m: &Mts, name: &str) -> Result<StateId, CliError> {
    m.state_id(name)
        .ok_or_else(|| CliError::Usage(format!("unknown state `{name}`")))
}

/// Parses `{x,y}`, `{}` or a bare comma list.
pub fn parse_set(m: &Mts, text: &str) -> Result<StateSet, CliError> {
    let t = text.trim();
    let body = match (t.strip_prefix('{'), t.ends_with('}')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => t,
        _ => {
            return Err(CliError::Usage(format!(
                "malformed set expression `{text}`"
            )))
        }
    };
    let ids = body
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| state(m, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StateSet::from_ids(m.num_states(), ids))
}

/// Parses `x:y,u:v`.
pub fn parse_pairs(m: &Mts, text: &str) -> Result<Vec<(StateId, StateId)>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("pair `{p}` is not of the form x:y")))?;
            Ok((state(m, a.trim())?, state(m, b.trim())?))
        })
        .collect()
}

pub fn names(m: &Mts, s: &StateSet) -> Vec<String> {
    s.iter().map(|x| m.state_name(x).to_string()).collect()
}
