//! JSON instance and allocation documents.
//!
//! Canonical form: keys sorted, no insignificant whitespace. Parsing into
//! the typed document and re-serializing through `serde_json::Value`
//! (whose maps are ordered) yields it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Query, Value};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub agents: Vec<String>,
    pub items: Vec<String>,
    pub valuations: Vec<Vec<Value>>,
    /// Item id to agent id, for pre-assigned items only.
    #[serde(default)]
    pub assigned: BTreeMap<String, String>,
    pub query: QueryDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", deny_unknown_fields)]
pub enum QueryDocument {
    #[serde(rename = "EFAE")]
    Efae,
    #[serde(rename = "REFAE")]
    Refae { recipients: Vec<String> },
    #[serde(rename = "FEFAE")]
    Fefae { p: usize },
}

/// `{"assigned": {item: agent}}` over every item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationDocument {
    pub assigned: BTreeMap<String, String>,
}

impl From<&Instance> for InstanceDocument {
    fn from(inst: &Instance) -> Self {
        let assigned = inst
            .assigned()
            .iter()
            .enumerate()
            .filter_map(|(a, o)| o.map(|j| (inst.items()[a].clone(), inst.agents()[j].clone())))
            .collect();
        let query = match inst.query() {
            Query::Efae => QueryDocument::Efae,
            Query::Refae { recipients } => QueryDocument::Refae {
                recipients: recipients.iter().map(|&r| inst.agents()[r].clone()).collect(),
            },
            Query::Fefae { p } => QueryDocument::Fefae { p: *p },
        };
        InstanceDocument {
            agents: inst.agents().to_vec(),
            items: inst.items().to_vec(),
            valuations: inst.values().to_vec(),
            assigned,
            query,
        }
    }
}

impl InstanceDocument {
    pub fn to_instance(&self) -> Result<Instance> {
        let agent_index = index_of(&self.agents);
        let item_index = index_of(&self.items);
        let mut assigned = vec![None; self.items.len()];
        for (item, agent) in &self.assigned {
            let a = *item_index
                .get(item.as_str())
                .ok_or_else(|| Error::Schema(format!("assigned: unknown item `{item}`")))?;
            let j = *agent_index
                .get(agent.as_str())
                .ok_or_else(|| Error::Schema(format!("assigned: unknown agent `{agent}`")))?;
            assigned[a] = Some(j);
        }
        let query = match &self.query {
            QueryDocument::Efae => Query::Efae,
            QueryDocument::Refae { recipients } => Query::Refae {
                recipients: recipients
                    .iter()
                    .map(|r| {
                        agent_index
                            .get(r.as_str())
                            .copied()
                            .ok_or_else(|| Error::Schema(format!("recipients: unknown agent `{r}`")))
                    })
                    .collect::<Result<_>>()?,
            },
            QueryDocument::Fefae { p } => Query::Fefae { p: *p },
        };
        Instance::new(
            self.agents.clone(),
            self.items.clone(),
            self.valuations.clone(),
            assigned,
            query,
        )
    }
}

fn index_of(ids: &[String]) -> BTreeMap<&str, usize> {
    // Duplicates are reported by instance validation; keep the first here.
    let mut map = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        map.entry(id.as_str()).or_insert(i);
    }
    map
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => Error::Parse {
                line: e.line(),
                column: e.column(),
                message: strip_position(&e.to_string()),
            },
            Category::Data => Error::Schema(e.to_string()),
        }
    })
}

/// serde_json appends " at line L column C"; the position is reported
/// separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn canonical<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    serde_json::to_string(&value).expect("values serialize")
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    from_json::<InstanceDocument>(text)?.to_instance()
}

pub fn serialize_instance(inst: &Instance) -> String {
    canonical(&InstanceDocument::from(inst))
}

/// Re-serializes any JSON text in canonical form.
pub fn canonicalize(text: &str) -> Result<String> {
    let value: serde_json::Value = from_json(text)?;
    Ok(serde_json::to_string(&value).expect("values serialize"))
}

pub fn parse_allocation(text: &str, inst: &Instance) -> Result<Allocation> {
    let doc: AllocationDocument = from_json(text)?;
    let agent_index = index_of(inst.agents());
    let item_index = index_of(inst.items());
    let mut owner = vec![usize::MAX; inst.m()];
    for (item, agent) in &doc.assigned {
        let a = *item_index
            .get(item.as_str())
            .ok_or_else(|| Error::Schema(format!("assigned: unknown item `{item}`")))?;
        owner[a] = *agent_index
            .get(agent.as_str())
            .ok_or_else(|| Error::Schema(format!("assigned: unknown agent `{agent}`")))?;
    }
    if let Some(a) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::Schema(format!(
            "allocation leaves item `{}` unassigned",
            inst.items()[a]
        )));
    }
    Ok(Allocation::new(owner))
}

pub fn serialize_allocation(inst: &Instance, alloc: &Allocation) -> String {
    let assigned = alloc
        .owners()
        .iter()
        .enumerate()
        .map(|(a, &j)| (inst.items()[a].clone(), inst.agents()[j].clone()))
        .collect();
    canonical(&AllocationDocument { assigned })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EF1_BLOCK: &str = r#"{"agents":["1","2"],"assigned":{"x":"2","y":"1"},"items":["x","y","z"],"query":{"variant":"EFAE"},"valuations":[[10,0,1],[0,10,1]]}"#;

    #[test]
    fn round_trip_is_byte_stable() {
        let inst = parse_instance(EF1_BLOCK).unwrap();
        assert_eq!(serialize_instance(&inst), EF1_BLOCK);
        assert_eq!(inst.owner_of(0), Some(1));
    }

    #[test]
    fn whitespace_and_key_order_are_canonicalized() {
        let pretty = r#"{
            "query": {"variant": "FEFAE", "p": 1},
            "valuations": [[1]],
            "items": ["a"],
            "agents": ["u"]
        }"#;
        let inst = parse_instance(pretty).unwrap();
        assert_eq!(
            serialize_instance(&inst),
            r#"{"agents":["u"],"assigned":{},"items":["a"],"query":{"p":1,"variant":"FEFAE"},"valuations":[[1]]}"#
        );
        assert_eq!(canonicalize(pretty).unwrap().find(' '), None);
    }

    #[test]
    fn truncated_document_is_a_parse_error() {
        match parse_instance(&EF1_BLOCK[..40]) {
            Err(Error::Parse { line: 1, column, .. }) => assert!(column > 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_errors() {
        let missing = r#"{"agents":["1"],"items":[],"valuations":[[]]}"#;
        assert!(matches!(parse_instance(missing), Err(Error::Schema(_))));
        let bad_variant = EF1_BLOCK.replace("EFAE", "XEFAE");
        assert!(matches!(parse_instance(&bad_variant), Err(Error::Schema(_))));
        let unknown_agent = EF1_BLOCK.replace(r#""x":"2""#, r#""x":"9""#);
        assert!(matches!(parse_instance(&unknown_agent), Err(Error::Schema(_))));
        let float = EF1_BLOCK.replace("10,0,1]", "10.5,0,1]");
        assert!(matches!(parse_instance(&float), Err(Error::Schema(_))));
    }

    #[test]
    fn refae_recipients_by_id() {
        let doc = EF1_BLOCK.replace(r#"{"variant":"EFAE"}"#, r#"{"recipients":["2"],"variant":"REFAE"}"#);
        let inst = parse_instance(&doc).unwrap();
        assert_eq!(inst.query(), &Query::Refae { recipients: vec![1] });
        assert_eq!(serialize_instance(&inst), doc);
    }

    #[test]
    fn allocation_round_trip() {
        let inst = parse_instance(EF1_BLOCK).unwrap();
        let alloc = Allocation::extend(&inst, &[(2, 0)]).unwrap();
        let text = serialize_allocation(&inst, &alloc);
        assert_eq!(text, r#"{"assigned":{"x":"2","y":"1","z":"1"}}"#);
        assert_eq!(parse_allocation(&text, &inst).unwrap(), alloc);
        assert!(matches!(
            parse_allocation(r#"{"assigned":{"x":"2"}}"#, &inst),
            Err(Error::Schema(_))
        ));
    }
}
