use fixedbitset::FixedBitSet;

/// One agent inside a joint search node. `loc == None` means the agent has
/// terminated; its cost is frozen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgentState {
    pub loc: Option<usize>,
    pub cost: u32,
}

impl AgentState {
    pub fn at(loc: usize, cost: u32) -> Self {
        AgentState { loc: Some(loc), cost }
    }

    pub fn is_live(&self) -> bool {
        self.loc.is_some()
    }
}

/// How far a node's heuristic evaluation has progressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Singleton,
    Mtsp,
    Expanded,
}

#[derive(Debug, Clone)]
pub struct SearchNode {
    pub agents: Vec<AgentState>,
    /// Targets not yet seen, as indices into the heuristic context.
    pub residual: FixedBitSet,
    pub f: u64,
    pub stage: Stage,
    pub parent: Option<usize>,
    /// Per-agent remaining cost from the mTSP bound, once computed.
    pub mtsp_h: Option<Vec<u32>>,
    pub seq: u64,
    pub dominated: bool,
}

impl SearchNode {
    /// Makespan so far.
    pub fn g(&self) -> u32 {
        self.agents.iter().map(|a| a.cost).max().unwrap_or(0)
    }

    pub fn is_goal(&self) -> bool {
        self.residual.is_clear()
    }

    pub fn locations(&self) -> Vec<Option<usize>> {
        self.agents.iter().map(|a| a.loc).collect()
    }

    pub fn costs(&self) -> Vec<u32> {
        self.agents.iter().map(|a| a.cost).collect()
    }
}
