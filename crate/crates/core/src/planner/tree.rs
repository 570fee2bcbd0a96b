use super::{Path, PlannerError, TurnEvent};
use crate::gridmap::State;
use crate::grounding::NavCommand;

/// Tree of states in insertion order. Node 0 is the root and every parent
/// index is smaller than its child's.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchTree {
    nodes: Vec<State>,
    parents: Vec<Option<usize>>,
    commands_consumed: Vec<usize>,
    consumed: Vec<Option<NavCommand>>,
}

impl SearchTree {
    pub fn new(root: State) -> Self {
        Self {
            nodes: vec![root],
            parents: vec![None],
            commands_consumed: vec![0],
            consumed: vec![None],
        }
    }

    /// Appends `state` below `parent`. `command` is the navigation command
    /// consumed on arrival at this node, if any.
    pub fn push(&mut self, state: State, parent: usize, command: Option<NavCommand>) -> usize {
        assert!(parent < self.nodes.len(), "parent {parent} not in tree");
        let consumed = self.commands_consumed[parent] + usize::from(command.is_some());
        self.nodes.push(state);
        self.parents.push(Some(parent));
        self.commands_consumed.push(consumed);
        self.consumed.push(command);
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[State] {
        &self.nodes
    }

    pub fn state(&self, i: usize) -> State {
        self.nodes[i]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parents[i]
    }

    /// Number of commands consumed on the way from the root to `i`.
    pub fn commands_consumed(&self, i: usize) -> usize {
        self.commands_consumed[i]
    }

    pub fn consumed_command(&self, i: usize) -> Option<NavCommand> {
        self.consumed[i]
    }

    /// `(parent, child)` index pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (p, i)))
    }

    pub fn depth(&self, mut i: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parents[i] {
            i = p;
            d += 1;
        }
        d
    }
}

/// Index of the node closest to `x`; ties go to the earliest node.
pub fn nearest_node(tree: &SearchTree, x: &State) -> Result<usize, PlannerError> {
    nearest_where(tree, x, |_| true).ok_or(PlannerError::EmptyTree)
}

/// Closest node among those accepted by `keep`.
pub(crate) fn nearest_where(tree: &SearchTree, x: &State, keep: impl Fn(usize) -> bool) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, s) in tree.nodes.iter().enumerate() {
        if !keep(i) {
            continue;
        }
        let d2 = (s.x - x.x).powi(2) + (s.y - x.y).powi(2);
        if best.is_none_or(|(_, b)| d2 < b) {
            best = Some((i, d2));
        }
    }
    best.map(|(i, _)| i)
}

/// Root-to-node state sequence, with the commands consumed along the way.
pub fn extract_path(tree: &SearchTree, node: usize) -> Result<Path, PlannerError> {
    if node >= tree.len() {
        return Err(PlannerError::InvalidIndex(node));
    }
    let mut chain = vec![node];
    let mut cur = node;
    while let Some(p) = tree.parent(cur) {
        chain.push(p);
        cur = p;
    }
    chain.reverse();
    let states = chain.iter().map(|&i| tree.state(i)).collect();
    let turn_events = chain
        .iter()
        .enumerate()
        .filter_map(|(k, &i)| tree.consumed_command(i).map(|command| TurnEvent { index: k, command }))
        .collect();
    Ok(Path { states, turn_events })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_basics() {
        let tree = SearchTree::new(State::new(1.0, 1.0));
        assert_eq!(nearest_node(&tree, &State::new(9.0, 9.0)).unwrap(), 0);
        let mut tree = tree;
        tree.push(State::new(3.0, 1.0), 0, None);
        // equidistant from both nodes
        assert_eq!(nearest_node(&tree, &State::new(2.0, 5.0)).unwrap(), 0);
        assert_eq!(nearest_node(&tree, &State::new(2.9, 1.0)).unwrap(), 1);
        assert_eq!(nearest_node(&SearchTree::default(), &State::new(0.0, 0.0)), Err(PlannerError::EmptyTree));
    }

    #[test]
    fn chain_extraction() {
        let mut tree = SearchTree::new(State::new(0.0, 0.0));
        assert_eq!(extract_path(&tree, 0).unwrap().states, vec![State::new(0.0, 0.0)]);
        let a = tree.push(State::new(1.0, 0.0), 0, None);
        let b = tree.push(State::new(2.0, 0.0), a, Some(NavCommand::Left));
        tree.push(State::new(0.0, 5.0), 0, None);
        let p = extract_path(&tree, b).unwrap();
        assert_eq!(
            p.states,
            vec![State::new(0.0, 0.0), State::new(1.0, 0.0), State::new(2.0, 0.0)]
        );
        assert_eq!(p.turn_events, vec![TurnEvent { index: 2, command: NavCommand::Left }]);
        assert_eq!(tree.commands_consumed(b), 1);
        assert_eq!(tree.depth(b), 2);
        assert_eq!(extract_path(&tree, 9), Err(PlannerError::InvalidIndex(9)));
    }
}
