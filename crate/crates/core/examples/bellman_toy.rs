//! The Q-table is generic over states and actions. Here it learns a
//! two-state chain whose optimal values can be worked out by hand:
//! staying in state 1 pays 2 per step, so V(1) = 2 / (1 - 0.9) = 20, and
//! the best move from state 0 is to switch for 1 + 0.9 * 20 = 19.

use braidq::{select_action, QTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STAY: char = 's';
const SWITCH: char = 'w';

fn transition(state: u8, action: char) -> (u8, f64) {
    match (state, action) {
        (0, STAY) => (0, 0.0),
        (0, _) => (1, 1.0),
        (1, STAY) => (1, 2.0),
        _ => (0, 0.0),
    }
}

fn main() -> braidq::Result<()> {
    let actions = [STAY, SWITCH];
    let mut q: QTable<u8, char> = QTable::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut state = 0u8;
    for t in 1..=200_000 {
        let a = select_action(&q, &state, &actions, 0.2, &mut rng)?;
        let (next, r) = transition(state, a);
        q.bellman_update(&state, a, r, Some(&next), &actions, 0.05, 0.9);
        state = next;
        if t % 50_000 == 0 {
            println!(
                "t={t:>6}  Q(0,s)={:.3} Q(0,w)={:.3} Q(1,s)={:.3} Q(1,w)={:.3}",
                q.get(&0, STAY),
                q.get(&0, SWITCH),
                q.get(&1, STAY),
                q.get(&1, SWITCH)
            );
        }
    }
    println!("optimal:  Q(0,s)=17.100 Q(0,w)=19.000 Q(1,s)=20.000 Q(1,w)=17.100");
    Ok(())
}
