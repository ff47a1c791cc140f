#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use kessence_cli::table::parse_f64;
use kessence_cli::{run_config, Command, Outcome, RunConfig};

pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn read(path: &Path) -> Csv {
        let text = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let mut lines = text
            .lines()
            .map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>());
        let header = lines.next().expect("header");
        let rows: Vec<_> = lines.collect();
        for r in &rows {
            assert_eq!(r.len(), header.len(), "ragged row in {}", path.display());
        }
        Csv { header, rows }
    }

    pub fn col(&self, name: &str) -> usize {
        self.header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("no column {name}"))
    }

    pub fn f(&self, row: usize, name: &str) -> f64 {
        let cell = &self.rows[row][self.col(name)];
        parse_f64(cell).unwrap_or_else(|| panic!("bad number {cell:?}"))
    }

    pub fn s(&self, row: usize, name: &str) -> &str {
        &self.rows[row][self.col(name)]
    }
}

pub fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

pub fn shipped(name: &str) -> RunConfig {
    RunConfig::load(&configs_dir().join(name)).unwrap()
}

pub fn run_in(dir: &Path, command: Command, mut cfg: RunConfig) -> Outcome {
    cfg.output.dir = dir.to_path_buf();
    run_config(command, &cfg).unwrap()
}

pub fn output(dir: &Path, cfg_stem: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{cfg_stem}_{suffix}"))
}
