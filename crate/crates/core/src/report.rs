//! Verdict records shared by the checkers: flags with witnesses and lemma
//! reports. Field order is fixed so serialized reports are byte-stable.

use alloc::string::String;
use alloc::vec::Vec;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(u64),
    Text(String),
    List(Vec<Value>),
    Map(Witness),
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as u64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.into())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

impl From<&[usize]> for Value {
    fn from(v: &[usize]) -> Self {
        Value::List(v.iter().map(|&x| x.into()).collect())
    }
}

impl From<Witness> for Value {
    fn from(w: Witness) -> Self {
        Value::Map(w)
    }
}

/// Ordered key/value details; serialized as a JSON object in insertion
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness(pub Vec<(&'static str, Value)>);

impl Witness {
    pub fn new() -> Self {
        Witness(Vec::new())
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<Value>) {
        self.0.push((key, value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// A yes/no property with supporting data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub holds: bool,
    #[serde(skip_serializing_if = "Witness::is_empty")]
    pub witness: Witness,
}

impl Flag {
    pub fn yes() -> Self {
        Flag {
            holds: true,
            witness: Witness::new(),
        }
    }

    pub fn yes_with(witness: Witness) -> Self {
        Flag {
            holds: true,
            witness,
        }
    }

    pub fn no(witness: Witness) -> Self {
        Flag {
            holds: false,
            witness,
        }
    }

    pub fn from_bool(holds: bool, witness: Witness) -> Self {
        Flag { holds, witness }
    }
}

/// One checkable statement evaluated on one instance. `pass` is `None`
/// exactly when the hypotheses fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub applicable: bool,
    pub pass: Option<bool>,
    pub witness: Witness,
}

impl LemmaReport {
    pub fn inapplicable(lemma: &'static str, reason: &'static str) -> Self {
        LemmaReport {
            lemma,
            applicable: false,
            pass: None,
            witness: Witness::new().with("reason", reason),
        }
    }

    pub fn verdict(lemma: &'static str, pass: bool, witness: Witness) -> Self {
        LemmaReport {
            lemma,
            applicable: true,
            pass: Some(pass),
            witness,
        }
    }

    /// Applicable and failed: a counterexample.
    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}
