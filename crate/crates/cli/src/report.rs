use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Map, Value};

/// One checked statement: what was expected, what came out.
pub struct Claim {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub anchor: &'static str,
}

impl Claim {
    pub fn pass(&self) -> bool {
        self.expected == self.computed
    }
}

pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub results: Map<String, Value>,
    pub claims: Vec<Claim>,
    timings: Vec<(String, f64)>,
    started: Instant,
}

impl Report {
    pub fn new(command: &str, config: Map<String, Value>) -> Self {
        Report {
            command: command.to_string(),
            config,
            results: Map::new(),
            claims: Vec::new(),
            timings: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn claim(&mut self, name: &str, expected: impl Into<Value>, computed: impl Into<Value>, anchor: &'static str) {
        self.claims.push(Claim {
            name: name.to_string(),
            expected: expected.into(),
            computed: computed.into(),
            anchor,
        });
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    /// Runs `f` and records its wall-clock time under `label`.
    pub fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.push((label.to_string(), t.elapsed().as_secs_f64()));
        out
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(Claim::pass)
    }

    pub fn to_json(&self, with_timings: bool) -> Value {
        let claims: Vec<Value> = self
            .claims
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "expected": c.expected,
                    "computed": c.computed,
                    "pass": c.pass(),
                    "anchor": c.anchor,
                })
            })
            .collect();
        let mut out = json!({
            "schema": 1,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "claims": claims,
            "pass": self.all_pass(),
        });
        if with_timings {
            let mut t = Map::new();
            for (k, v) in &self.timings {
                t.insert(k.clone(), json!(v));
            }
            t.insert("total".into(), json!(self.started.elapsed().as_secs_f64()));
            out["timings"] = Value::Object(t);
        }
        out
    }

    pub fn to_text(&self, with_timings: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for (k, v) in &self.results {
            let _ = writeln!(s, "  {k}: {}", compact(v));
        }
        for c in &self.claims {
            let status = if c.pass() { "PASS" } else { "FAIL" };
            let _ = write!(s, "  [{status}] {}: {}", c.name, compact(&c.computed));
            if !c.pass() {
                let _ = write!(s, " (expected {})", compact(&c.expected));
            }
            let _ = writeln!(s, "  -- {}", c.anchor);
        }
        if with_timings {
            for (k, v) in &self.timings {
                let _ = writeln!(s, "  time {k}: {v:.2}s");
            }
        }
        let _ = writeln!(
            s,
            "{} of {} claims pass",
            self.claims.iter().filter(|c| c.pass()).count(),
            self.claims.len()
        );
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Arbitrary-precision integers go out as decimal strings.
pub fn big(x: impl ToString) -> Value {
    Value::String(x.to_string())
}
