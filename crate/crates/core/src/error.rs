use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an instance needs at least one proposal")]
    NoProposals,
    #[error("an instance needs at least one agent")]
    NoAgents,
    #[error("agent {agent}: proposal index {index} out of range (m = {m})")]
    BeliefOutOfRange { agent: usize, index: usize, m: usize },
    #[error("proposal index {index} out of range (m = {m})")]
    ProposalOutOfRange { index: usize, m: usize },
    #[error("agent index {index} out of range (n = {n})")]
    AgentOutOfRange { index: usize, n: usize },
    #[error("instances disagree on the proposal count ({left} vs {right})")]
    MismatchedProposals { left: usize, right: usize },
    #[error("removing agents {0:?} would leave nobody to vote")]
    RemovesEveryone(Vec<usize>),
    #[error("agent {0} cannot delegate to itself")]
    SelfDelegation(usize),
    #[error("agent {from} is not willing to delegate to agent {to}")]
    UnwillingArc { from: usize, to: usize },
    #[error("delegation graph covers {graph} agents but the instance has {instance}")]
    GraphSizeMismatch { graph: usize, instance: usize },
    #[error("instance is not in the radical one-dimensional domain")]
    NotRadical,
    #[error("radical solvers need an odd number of agents, got {0}")]
    EvenElectorate(usize),
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid two-path coloring: {0}")]
    InvalidTwoPathColoring(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("integer program: {0}")]
    Program(String),
    #[error("LP text line {line}: {message}")]
    LpParse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
