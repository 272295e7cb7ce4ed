use std::process::ExitCode;

/// Ways a command can fail, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    /// The input was checked and found wrong (exit 1).
    Verify(String),
    /// An oracle refused an instance above its budget (exit 2).
    Budget(String),
    /// Unreadable or malformed input (exit 3).
    Input(String),
    /// Standard output was closed by the reader; not an error.
    Closed,
}

pub type Outcome<T> = Result<T, Failure>;

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Verify(_) => 1,
            Failure::Budget(_) => 2,
            Failure::Input(_) => 3,
            Failure::Closed => 0,
        })
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Verify(m) => m.clone(),
            Failure::Budget(m) => format!("oracle budget exceeded: {m}"),
            Failure::Input(m) => format!("input error: {m}"),
            Failure::Closed => String::new(),
        }
    }
}

impl From<facewalk::Error> for Failure {
    fn from(e: facewalk::Error) -> Self {
        match e {
            facewalk::Error::Input(m) => Failure::Input(m),
            facewalk::Error::Budget(m) => Failure::Budget(m),
            facewalk::Error::Structure(m) => Failure::Verify(m),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Input(format!("i/o: {e}"))
    }
}
