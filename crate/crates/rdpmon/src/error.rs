use rdpmon_core::Error;

use crate::parse::ParseError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_SCOPE: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid job: {0}")]
    Job(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// `parse`, `input`, `scope`, `resource` or `internal`.
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Job(_) => "input",
            CliError::Io { .. } => "internal",
            CliError::Core(e) => match e {
                Error::UnknownVariable(_) | Error::InvalidArgument(_) | Error::IndexOutOfRange { .. } => "input",
                Error::ResourceCap(_) => "resource",
                Error::ConfigMismatch(_) | Error::DomainMismatch(_) | Error::NonzeroTrace => "internal",
                Error::UnsupportedCharacteristic(_)
                | Error::CharacteristicNotGood { .. }
                | Error::PrimeNotVeryGood { .. }
                | Error::NotImplementedForClass(_)
                | Error::UnfittableShape(_)
                | Error::NotADeformationOfThisClass { .. }
                | Error::UnsupportedShape(_)
                | Error::AmbiguousResidual { .. }
                | Error::WildRamificationUnsupported { .. }
                | Error::SingularGenericFiber(_)
                | Error::CoprimalityViolated { .. } => "scope",
            },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.category() {
            "parse" | "input" => EXIT_PARSE,
            "scope" => EXIT_SCOPE,
            "resource" => EXIT_RESOURCE,
            _ => EXIT_FAILURE,
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            CliError::Parse(e) => Some(e.position),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rdpmon_core::classify::SingularityClass;

    #[test]
    fn exit_codes() {
        let d4: SingularityClass = "D4".parse().unwrap();
        assert_eq!(CliError::Core(Error::NotImplementedForClass(d4)).exit_code(), EXIT_SCOPE);
        assert_eq!(CliError::Core(Error::WildRamificationUnsupported { p: 3, bound: 3 }).exit_code(), EXIT_SCOPE);
        assert_eq!(CliError::Core(Error::AmbiguousResidual { b: 1, r: 1 }).exit_code(), EXIT_SCOPE);
        assert_eq!(CliError::Core(Error::ResourceCap("grid".into())).exit_code(), EXIT_RESOURCE);
        assert_eq!(CliError::Job("p".into()).exit_code(), EXIT_PARSE);
        let e = ParseError { position: 2, message: "m".into(), input: "abc".into() };
        assert_eq!(CliError::Parse(e).exit_code(), EXIT_PARSE);
    }
}
