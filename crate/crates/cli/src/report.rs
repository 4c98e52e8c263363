//! The result object printed by every computing subcommand.

use serde::Serialize;
use zeldovich_core::{NzBreakdown, PhysConst};

/// Version of the JSON result and CSV figure layouts (see docs/).
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub schema_version: u32,
    pub method: String,
    pub constants: PhysConst,
    pub flags: Vec<String>,
    pub paper_notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NzResult {
    pub nz_electric: f64,
    pub nz_magnetic: f64,
    pub nz_total: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_mc2: Option<f64>,
    pub quad_error: f64,
    pub metadata: Metadata,
}

impl NzResult {
    pub fn new(nz: NzBreakdown, method: impl Into<String>, constants: PhysConst) -> Self {
        NzResult {
            nz_electric: nz.electric,
            nz_magnetic: nz.magnetic,
            nz_total: nz.total,
            energy_mc2: nz.energy_mc2,
            quad_error: nz.quad_error,
            metadata: Metadata {
                schema_version: SCHEMA_VERSION,
                method: method.into(),
                constants,
                flags: nz.flags,
                paper_notes: Vec::new(),
            },
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.metadata.paper_notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result is always serializable");
        s.push('\n');
        s
    }

    /// Header plus one row; flags are joined with `;`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let row = [
            self.nz_electric.to_string(),
            self.nz_magnetic.to_string(),
            self.nz_total.to_string(),
            self.energy_mc2.map(|x| x.to_string()).unwrap_or_default(),
            self.quad_error.to_string(),
            self.metadata.method.clone(),
            self.metadata.flags.join(";"),
        ];
        let written = w
            .write_record(["nz_electric", "nz_magnetic", "nz_total", "energy_mc2", "quad_error", "method", "flags"])
            .and_then(|_| w.write_record(&row));
        written.expect("writing to memory cannot fail");
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
    }
}
