//! Drives the `idgsc` binary in a scratch directory.

use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

pub const PASSPHRASE: &str = "correct horse battery staple";

pub struct Workspace {
    dir: TempDir,
}

impl Workspace {
    pub fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn arg(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_owned()
    }

    pub fn write(&self, name: &str, data: &[u8]) -> String {
        std::fs::write(self.path(name), data).unwrap();
        self.arg(name)
    }

    pub fn read(&self, name: &str) -> Vec<u8> {
        std::fs::read(self.path(name)).unwrap()
    }

    pub fn run_with(&self, args: &[&str], passphrase: &str) -> Output {
        Command::new(env!("CARGO_BIN_EXE_idgsc"))
            .args(args)
            .env("IDGSC_PASSPHRASE", passphrase)
            .env_remove("IDGSC_PARAMS")
            .current_dir(self.dir.path())
            .output()
            .unwrap()
    }

    pub fn run(&self, args: &[&str]) -> Output {
        self.run_with(args, PASSPHRASE)
    }

    /// Runs and asserts the exit status; returns stderr.
    pub fn expect(&self, code: i32, args: &[&str]) -> String {
        let out = self.run(args);
        let stderr = String::from_utf8_lossy(&out.stderr).into_owned();
        assert_eq!(out.status.code(), Some(code), "idgsc {args:?}\n{stderr}");
        stderr
    }

    /// Setup with a cheap KDF, then keys for alice and bob.
    pub fn provision(&self, toy: bool) {
        let (params, master) = (self.arg("params"), self.arg("master"));
        let mut args =
            vec!["setup", "--params", &params, "--master", &master, "--kdf-memory-kib", "64", "--kdf-iterations", "1"];
        if toy {
            args.push("--toy-group");
        }
        self.expect(0, &args);
        for who in ["alice", "bob"] {
            let out = self.arg(&format!("{who}.key"));
            self.expect(0, &["extract", "--params", &params, "--master", &master, "--id", who, "-o", &out]);
        }
    }
}
