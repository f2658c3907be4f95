//! Machine-readable run reports: one line of `key=value` pairs per record,
//! with values containing whitespace quoted. `--pretty` switches to one
//! field per line for humans.

use std::fmt::Display;

pub struct Report {
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { fields: vec![("cmd".into(), command.into())] }
    }

    pub fn push(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            self.fields
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect::<Vec<_>>()
                .join("\n")
        } else {
            self.fields
                .iter()
                .map(|(k, v)| {
                    if v.is_empty() || v.contains(char::is_whitespace) {
                        format!("{k}=\"{v}\"")
                    } else {
                        format!("{k}={v}")
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub fn print(&self, pretty: bool) {
        println!("{}", self.render(pretty));
    }
}
