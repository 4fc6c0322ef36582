pub mod coloring;
pub mod factor;
pub mod graph;
pub mod oracles;
pub mod wave;
pub mod pipeline;
