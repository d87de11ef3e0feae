//! Configuration files, JSON reports and the `hopfmod` command line on top of
//! [`hopfmod_core`].

pub mod cli;
pub mod config;
pub mod error;
pub mod report;
pub mod sample;
pub mod tasks;
pub mod verify;

pub use config::{parse_config, ConfigFile, ModuleExpr, SessionConfig, TaskConfig};
pub use error::{ErrorKind, HopfmodError};
pub use report::{Report, Status, TaskResult};
