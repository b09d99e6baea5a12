//! JSON instance files.
//!
//! ```json
//! {
//!   "agents": [{"known": [0, 2], "plus": [0]}],
//!   "m": 3,
//!   "metadata": {"certificate": {...}, "domain": "one-dimensional"}
//! }
//! ```
//!
//! Indices are 0-based. `known` lists the proposals the agent is certain
//! about and `plus` those it benefits from. Files are written with sorted
//! keys, sorted index lists, two-space indentation and a final newline.

use safezone::{Belief, Certificate, DomainClass, ProposalSet, VotingInstance};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentEntry {
    pub known: Vec<usize>,
    pub plus: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub agents: Vec<AgentEntry>,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl InstanceDocument {
    pub fn from_instance(instance: &VotingInstance, metadata: Option<Metadata>) -> Self {
        let agents = instance
            .beliefs()
            .iter()
            .map(|b| AgentEntry { known: b.known().iter().collect(), plus: b.plus().iter().collect() })
            .collect();
        Self { agents, m: instance.m(), metadata }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_instance(&self) -> Result<VotingInstance, CliError> {
        for (i, agent) in self.agents.iter().enumerate() {
            for (field, list) in [("known", &agent.known), ("plus", &agent.plus)] {
                if let Some(&index) = list.iter().find(|&&p| p >= self.m) {
                    return Err(CliError::Field {
                        path: format!("agents[{i}].{field}"),
                        message: format!("proposal index {index} out of range (m = {})", self.m),
                    });
                }
                let mut sorted = list.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(CliError::Field {
                        path: format!("agents[{i}].{field}"),
                        message: "repeated proposal index".into(),
                    });
                }
            }
        }
        let beliefs = self
            .agents
            .iter()
            .map(|a| Belief::new(a.plus.iter().copied().collect::<ProposalSet>(), a.known.iter().copied().collect()))
            .collect();
        Ok(VotingInstance::new(self.m, beliefs)?)
    }

    /// Canonical text: sorted keys and index lists.
    pub fn to_canonical_json(&self) -> String {
        let mut doc = self.clone();
        for a in &mut doc.agents {
            a.known.sort_unstable();
            a.plus.sort_unstable();
        }
        // Going through `Value` sorts object keys.
        let value = serde_json::to_value(&doc).expect("documents serialize");
        let mut text = String::new();
        render(&value, 0, &mut text);
        text.push('\n');
        text
    }
}

/// Pretty printing that keeps arrays of scalars on one line.
fn render(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                render(v, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                render(v, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{"m": 5, "agents": [
        {"plus": [3, 2, 1], "known": [0, 2, 4]},
        {"plus": [1, 2], "known": [1, 2, 3, 4]},
        {"plus": [0, 1, 2], "known": [0, 1, 2, 3, 4]}]}"#;

    #[test]
    fn canonical_round_trip() {
        let doc = InstanceDocument::parse(EXAMPLE).unwrap();
        let inst = doc.to_instance().unwrap();
        let text = InstanceDocument::from_instance(&inst, None).to_canonical_json();
        assert_eq!(text, doc.to_canonical_json());
        let again = InstanceDocument::parse(&text).unwrap();
        assert_eq!(again.to_instance().unwrap(), inst);
        assert_eq!(again.to_canonical_json(), text);
        assert!(text.starts_with("{\n  \"agents\": [\n    {\n      \"known\": [0, 2, 4],\n"));
    }

    #[test]
    fn diagnostics() {
        let err = InstanceDocument::parse("{\"m\": 2,\n \"agents\": [}").unwrap_err();
        assert!(matches!(err, CliError::Json { line: 2, .. }));
        let doc = InstanceDocument::parse(r#"{"m": 2, "agents": [{"plus": [], "known": [5]}]}"#).unwrap();
        assert!(doc.to_instance().unwrap_err().to_string().contains("agents[0].known"));
        let doc = InstanceDocument::parse(r#"{"m": 2, "agents": []}"#).unwrap();
        assert!(doc.to_instance().is_err());
        assert!(InstanceDocument::parse(r#"{"m": 2, "agents": [], "extra": 1}"#).is_err());
    }
}
