//! Dense feedforward network core: forward pass, softmax cross-entropy,
//! exact analytic backpropagation, SGD, and accuracy evaluation.
//!
//! Everything is f64 and deterministic; weight init and mini-batch order come
//! from dedicated RNG streams derived from the network seed.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng;

/// Dense numeric array in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl Tensor {
    pub fn new(shape: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        let expect: usize = shape.iter().product();
        if expect != values.len() {
            return Err(Error::Shape(format!(
                "shape {:?} wants {} values, got {}",
                shape,
                expect,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite tensor value".into()));
        }
        Ok(Tensor { shape, values })
    }

    /// 2-D constructor: `rows × cols`.
    pub fn matrix(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        Tensor::new(vec![rows, cols], values)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> usize {
        self.shape[0]
    }

    pub fn cols(&self) -> usize {
        self.shape[1]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        let c = self.cols();
        &self.values[r * c..(r + 1) * c]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Relu,
    Identity,
}

/// One dense layer: `out_dim × in_dim` weights plus a bias vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub in_dim: usize,
    pub out_dim: usize,
    pub activation: Activation,
}

impl LayerSpec {
    pub fn new(in_dim: usize, out_dim: usize, activation: Activation) -> Result<Self> {
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::Usage("layer dimensions must be positive".into()));
        }
        Ok(LayerSpec {
            in_dim,
            out_dim,
            activation,
        })
    }

    pub fn param_count(&self) -> usize {
        self.out_dim * self.in_dim + self.out_dim
    }
}

/// Weights (row-major, `out_dim × in_dim`) and biases of one layer.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerParams {
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl LayerParams {
    pub fn zeros(spec: &LayerSpec) -> Self {
        LayerParams {
            weights: vec![0.0; spec.out_dim * spec.in_dim],
            bias: vec![0.0; spec.out_dim],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len() + self.bias.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.weights.iter().chain(self.bias.iter())
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.weights.iter_mut().chain(self.bias.iter_mut())
    }
}

/// All parameters of a model, one block per layer. Also the layout of
/// gradient sets and Fisher diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams(pub Vec<LayerParams>);

impl ModelParams {
    pub fn zeros_like(layers: &[LayerSpec]) -> Self {
        ModelParams(layers.iter().map(LayerParams::zeros).collect())
    }

    pub fn param_count(&self) -> usize {
        self.0.iter().map(LayerParams::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.0.iter().flat_map(LayerParams::iter)
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.0.iter_mut().flat_map(LayerParams::iter_mut)
    }

    pub fn congruent(&self, other: &ModelParams) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| a.weights.len() == b.weights.len() && a.bias.len() == b.bias.len())
    }

    pub fn all_finite(&self) -> bool {
        self.iter().all(|v| v.is_finite())
    }
}

/// Per-parameter gradients, shape-congruent with the source model.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientSet(pub ModelParams);

impl GradientSet {
    pub fn zeros_like(layers: &[LayerSpec]) -> Self {
        GradientSet(ModelParams::zeros_like(layers))
    }

    /// grads += other * scale
    pub fn add_scaled(&mut self, other: &GradientSet, scale: f64) {
        for (g, o) in self.0.iter_mut().zip(other.0.iter()) {
            *g += o * scale;
        }
    }
}

/// Step counter and learning rate of a training loop.
#[derive(Debug, Clone, Copy)]
pub struct TrainLoopState {
    pub step: u64,
    pub eta: f64,
}

impl TrainLoopState {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta > 0.0) {
            return Err(Error::Usage(format!("learning rate must be positive, got {eta}")));
        }
        Ok(TrainLoopState { step: 0, eta })
    }
}

/// Layered feedforward classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub layers: Vec<LayerSpec>,
    pub params: ModelParams,
    pub rng_seed: u64,
}

/// Glorot-uniform init for one layer from its own stream.
pub fn init_layer(spec: &LayerSpec, seed: u64, layer_index: u64) -> LayerParams {
    let mut rng = rng::stream(seed, "init", &[layer_index]);
    let bound = (6.0 / (spec.in_dim + spec.out_dim) as f64).sqrt();
    let weights = (0..spec.out_dim * spec.in_dim)
        .map(|_| rng.gen_range(-bound..bound))
        .collect();
    LayerParams {
        weights,
        bias: vec![0.0; spec.out_dim],
    }
}

impl Network {
    /// Build a dense stack `input_dim → hidden... → classes`; hidden layers
    /// ReLU, output layer identity (softmax lives in the loss).
    pub fn dense(input_dim: usize, hidden: &[usize], classes: usize, seed: u64) -> Result<Self> {
        let mut dims = vec![input_dim];
        dims.extend_from_slice(hidden);
        dims.push(classes);
        let mut layers = Vec::new();
        for w in dims.windows(2) {
            let last = layers.len() == dims.len() - 2;
            let act = if last { Activation::Identity } else { Activation::Relu };
            layers.push(LayerSpec::new(w[0], w[1], act)?);
        }
        let params = ModelParams(
            layers
                .iter()
                .enumerate()
                .map(|(i, spec)| init_layer(spec, seed, i as u64))
                .collect(),
        );
        Ok(Network {
            layers,
            params,
            rng_seed: seed,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].in_dim
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().unwrap().out_dim
    }

    /// Raw logits for a batch.
    pub fn forward(&self, batch: &Tensor) -> Result<Tensor> {
        forward_path(&self.layers, &self.params.0, batch)
    }

    /// Mean cross-entropy loss and its exact gradient.
    pub fn backward(&self, batch: &Tensor, labels: &[usize]) -> Result<(f64, GradientSet)> {
        let (loss, grads) = backprop_path(&self.layers, &self.params.0, batch, labels)?;
        Ok((loss, GradientSet(ModelParams(grads))))
    }

    /// One plain SGD step: θ ← θ − η·g.
    pub fn sgd_step(&mut self, state: &mut TrainLoopState, grads: &GradientSet) -> Result<()> {
        if !self.params.congruent(&grads.0) {
            return Err(Error::Shape("gradient set not congruent with network".into()));
        }
        if !grads.0.all_finite() {
            return Err(Error::Numeric(format!(
                "non-finite gradient at step {}",
                state.step
            )));
        }
        for (p, g) in self.params.iter_mut().zip(grads.0.iter()) {
            *p -= state.eta * g;
        }
        state.step += 1;
        Ok(())
    }

    /// Fraction of dataset samples whose argmax logit equals the label.
    /// Argmax ties break toward the lowest class index.
    pub fn accuracy(&self, data: &Dataset) -> Result<f64> {
        accuracy_path(&self.layers, &self.params.0, data)
    }

    /// Plain SGD training over shuffled mini-batches.
    pub fn train(
        &mut self,
        data: &Dataset,
        epochs: usize,
        eta: f64,
        batch_size: usize,
        seed: u64,
    ) -> Result<f64> {
        if batch_size == 0 {
            return Err(Error::Usage("batch size must be positive".into()));
        }
        let mut state = TrainLoopState::new(eta)?;
        let mut last_loss = f64::NAN;
        let mut order: Vec<usize> = (0..data.len()).collect();
        for epoch in 0..epochs {
            let mut shuffle_rng = rng::stream(seed, "shuffle", &[epoch as u64]);
            order.shuffle(&mut shuffle_rng);
            for chunk in order.chunks(batch_size) {
                let (batch, labels) = data.batch(chunk)?;
                let (loss, grads) = self.backward(&batch, &labels)?;
                self.sgd_step(&mut state, &grads)?;
                last_loss = loss;
            }
        }
        Ok(last_loss)
    }
}

/// Forward through an arbitrary layer stack.
pub(crate) fn forward_path(
    layers: &[LayerSpec],
    params: &[LayerParams],
    batch: &Tensor,
) -> Result<Tensor> {
    if batch.shape().len() != 2 {
        return Err(Error::Shape(format!("expected 2-D batch, got {:?}", batch.shape())));
    }
    if batch.cols() != layers[0].in_dim {
        return Err(Error::Shape(format!(
            "batch width {} != layer input dim {}",
            batch.cols(),
            layers[0].in_dim
        )));
    }
    let mut acts = forward_trace(layers, params, batch)?;
    Ok(acts.pop().unwrap())
}

/// Forward pass keeping every post-activation (index 0 is the input batch).
fn forward_trace(
    layers: &[LayerSpec],
    params: &[LayerParams],
    batch: &Tensor,
) -> Result<Vec<Tensor>> {
    let rows = batch.rows();
    let mut acts = Vec::with_capacity(layers.len() + 1);
    acts.push(batch.clone());
    for (spec, p) in layers.iter().zip(params) {
        let input = acts.last().unwrap();
        if input.cols() != spec.in_dim {
            return Err(Error::Shape(format!(
                "activation width {} != layer input dim {}",
                input.cols(),
                spec.in_dim
            )));
        }
        let mut out = vec![0.0; rows * spec.out_dim];
        for r in 0..rows {
            let x = input.row(r);
            let o = &mut out[r * spec.out_dim..(r + 1) * spec.out_dim];
            for (j, oj) in o.iter_mut().enumerate() {
                let wrow = &p.weights[j * spec.in_dim..(j + 1) * spec.in_dim];
                let mut acc = p.bias[j];
                for (w, xi) in wrow.iter().zip(x) {
                    acc += w * xi;
                }
                *oj = match spec.activation {
                    Activation::Relu => acc.max(0.0),
                    Activation::Identity => acc,
                };
            }
        }
        acts.push(Tensor::matrix(rows, spec.out_dim, out)?);
    }
    Ok(acts)
}

/// Row-wise softmax with max-subtraction.
pub(crate) fn softmax_row(logits: &[f64]) -> Vec<f64> {
    let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|v| (v - m).exp()).collect();
    let z: f64 = exps.iter().sum();
    exps.iter().map(|e| e / z).collect()
}

/// Mean over the batch of −log softmax(logits)[label].
pub fn cross_entropy(logits: &Tensor, labels: &[usize]) -> Result<f64> {
    if logits.rows() != labels.len() {
        return Err(Error::Shape(format!(
            "{} logit rows vs {} labels",
            logits.rows(),
            labels.len()
        )));
    }
    let classes = logits.cols();
    let mut total = 0.0;
    for (r, &label) in labels.iter().enumerate() {
        if label >= classes {
            return Err(Error::Label { label, classes });
        }
        let row = logits.row(r);
        let m = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let log_z = row.iter().map(|v| (v - m).exp()).sum::<f64>().ln() + m;
        total += log_z - row[label];
    }
    Ok(total / labels.len() as f64)
}

/// Backprop of mean softmax cross-entropy through a layer stack.
/// Returns (loss, per-layer gradients).
pub(crate) fn backprop_path(
    layers: &[LayerSpec],
    params: &[LayerParams],
    batch: &Tensor,
    labels: &[usize],
) -> Result<(f64, Vec<LayerParams>)> {
    let acts = forward_trace(layers, params, batch)?;
    let logits = acts.last().unwrap();
    let loss = cross_entropy(logits, labels)?;
    let rows = batch.rows();
    let classes = logits.cols();

    // dLoss/dLogits = (softmax − onehot) / B
    let mut delta = vec![0.0; rows * classes];
    for r in 0..rows {
        let sm = softmax_row(logits.row(r));
        let d = &mut delta[r * classes..(r + 1) * classes];
        for (j, dj) in d.iter_mut().enumerate() {
            *dj = sm[j] / rows as f64;
        }
        d[labels[r]] -= 1.0 / rows as f64;
    }

    let mut grads: Vec<LayerParams> = layers.iter().map(LayerParams::zeros).collect();
    for l in (0..layers.len()).rev() {
        let spec = &layers[l];
        let input = &acts[l];
        let output = &acts[l + 1];
        // ReLU derivative from the post-activation (output > 0 ⇔ pre > 0).
        if spec.activation == Activation::Relu {
            for (d, &o) in delta.iter_mut().zip(output.values()) {
                if o <= 0.0 {
                    *d = 0.0;
                }
            }
        }
        let g = &mut grads[l];
        for r in 0..rows {
            let x = input.row(r);
            let d = &delta[r * spec.out_dim..(r + 1) * spec.out_dim];
            for (j, &dj) in d.iter().enumerate() {
                if dj == 0.0 {
                    continue;
                }
                let wrow = &mut g.weights[j * spec.in_dim..(j + 1) * spec.in_dim];
                for (w, xi) in wrow.iter_mut().zip(x) {
                    *w += dj * xi;
                }
                g.bias[j] += dj;
            }
        }
        if l > 0 {
            let p = &params[l];
            let mut prev = vec![0.0; rows * spec.in_dim];
            for r in 0..rows {
                let d = &delta[r * spec.out_dim..(r + 1) * spec.out_dim];
                let pr = &mut prev[r * spec.in_dim..(r + 1) * spec.in_dim];
                for (j, &dj) in d.iter().enumerate() {
                    if dj == 0.0 {
                        continue;
                    }
                    let wrow = &p.weights[j * spec.in_dim..(j + 1) * spec.in_dim];
                    for (pi, w) in pr.iter_mut().zip(wrow) {
                        *pi += dj * w;
                    }
                }
            }
            delta = prev;
        }
    }
    Ok((loss, grads))
}

/// Accuracy of an arbitrary layer stack on a dataset.
pub(crate) fn accuracy_path(
    layers: &[LayerSpec],
    params: &[LayerParams],
    data: &Dataset,
) -> Result<f64> {
    if data.len() == 0 {
        return Err(Error::Usage("accuracy on empty dataset".into()));
    }
    let mut correct = 0usize;
    // Evaluate in chunks to bound memory.
    let all: Vec<usize> = (0..data.len()).collect();
    for chunk in all.chunks(256) {
        let (batch, labels) = data.batch(chunk)?;
        let logits = forward_path(layers, params, &batch)?;
        for (r, &label) in labels.iter().enumerate() {
            let row = logits.row(r);
            let mut best = 0usize;
            for (j, &v) in row.iter().enumerate() {
                if v > row[best] {
                    best = j;
                }
            }
            if best == label {
                correct += 1;
            }
        }
    }
    Ok(correct as f64 / data.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Dataset, Role};

    fn toy_batch(rows: usize, cols: usize, vals: &[f64]) -> Tensor {
        Tensor::matrix(rows, cols, vals.to_vec()).unwrap()
    }

    #[test]
    fn forward_zero_net_gives_zero_logits() {
        let mut net = Network::dense(3, &[], 2, 0).unwrap();
        for p in net.params.iter_mut() {
            *p = 0.0;
        }
        let out = net.forward(&toy_batch(2, 3, &[1.0, 2.0, 3.0, -1.0, 0.5, 0.0])).unwrap();
        assert!(out.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn forward_identity_net_passes_input_through() {
        let mut net = Network::dense(3, &[], 3, 0).unwrap();
        for p in net.params.0[0].weights.iter_mut() {
            *p = 0.0;
        }
        for j in 0..3 {
            net.params.0[0].weights[j * 3 + j] = 1.0;
        }
        net.params.0[0].bias.iter_mut().for_each(|b| *b = 0.0);
        let out = net.forward(&toy_batch(1, 3, &[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(out.values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn forward_matches_hand_computed_trace() {
        // 2×3×2 net, fixed weights; expected values computed by hand:
        // h = relu(W1 x + b1), y = W2 h + b2
        let mut net = Network::dense(2, &[3], 2, 0).unwrap();
        net.params.0[0] = LayerParams {
            weights: vec![1.0, -1.0, 0.5, 0.5, -2.0, 1.0],
            bias: vec![0.1, -0.2, 0.0],
        };
        net.params.0[1] = LayerParams {
            weights: vec![1.0, 0.0, -1.0, 2.0, 1.0, 0.5],
            bias: vec![0.0, 0.3],
        };
        // x = (1, 2): pre1 = (1-2+0.1, 0.5+1-0.2, -2+2) = (-0.9, 1.3, 0)
        // h = (0, 1.3, 0); y = (1*0 + 0*1.3 - 1*0, 2*0 + 1*1.3 + 0.5*0 + 0.3)
        //   = (0, 1.6)
        let out = net.forward(&toy_batch(1, 2, &[1.0, 2.0])).unwrap();
        assert!((out.values()[0] - 0.0).abs() < 1e-12);
        assert!((out.values()[1] - 1.6).abs() < 1e-12);
    }

    #[test]
    fn forward_rejects_width_mismatch() {
        let net = Network::dense(3, &[], 2, 0).unwrap();
        let err = net.forward(&toy_batch(1, 2, &[1.0, 2.0])).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('2') && msg.contains('3'), "{msg}");
    }

    #[test]
    fn cross_entropy_uniform_logits_is_ln_c() {
        let logits = toy_batch(1, 4, &[0.7, 0.7, 0.7, 0.7]);
        let loss = cross_entropy(&logits, &[2]).unwrap();
        assert!((loss - 4.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn cross_entropy_saturated_correct_class_is_near_zero() {
        let logits = toy_batch(1, 4, &[1000.0, 0.0, 0.0, 0.0]);
        let loss = cross_entropy(&logits, &[0]).unwrap();
        assert!(loss < 1e-9);
    }

    #[test]
    fn cross_entropy_two_class_hand_value() {
        // −log(e² / (e¹ + e²)) = log(1 + e^{-1}) = 0.313261687...
        let logits = toy_batch(1, 2, &[1.0, 2.0]);
        let loss = cross_entropy(&logits, &[1]).unwrap();
        assert!((loss - 0.3132616875182228).abs() < 1e-12);
    }

    #[test]
    fn cross_entropy_rejects_out_of_range_label() {
        let logits = toy_batch(1, 2, &[0.0, 0.0]);
        assert!(matches!(
            cross_entropy(&logits, &[2]).unwrap_err(),
            Error::Label { label: 2, classes: 2 }
        ));
    }

    #[test]
    fn backward_softmax_regression_closed_form() {
        // Single layer, single sample: dW = outer(softmax − onehot, x).
        let net = Network::dense(3, &[], 2, 7).unwrap();
        let x = [0.5, -1.0, 2.0];
        let batch = toy_batch(1, 3, &x);
        let (_, grads) = net.backward(&batch, &[1]).unwrap();
        let logits = net.forward(&batch).unwrap();
        let sm = softmax_row(logits.row(0));
        let residual = [sm[0], sm[1] - 1.0];
        for j in 0..2 {
            for i in 0..3 {
                let expect = residual[j] * x[i];
                let got = grads.0 .0[0].weights[j * 3 + i];
                assert!((got - expect).abs() < 1e-12);
            }
            assert!((grads.0 .0[0].bias[j] - residual[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn backward_gradient_vanishes_at_separable_minimum() {
        // Logits already saturated toward the right class: gradient ≈ 0.
        let mut net = Network::dense(2, &[], 2, 0).unwrap();
        net.params.0[0] = LayerParams {
            weights: vec![40.0, 0.0, 0.0, 40.0],
            bias: vec![0.0, 0.0],
        };
        let batch = toy_batch(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let (_, grads) = net.backward(&batch, &[0, 1]).unwrap();
        for g in grads.0.iter() {
            assert!(g.abs() < 1e-6);
        }
    }

    #[test]
    fn sgd_step_zero_gradient_is_identity() {
        let mut net = Network::dense(4, &[3], 2, 1).unwrap();
        let before = net.params.clone();
        let grads = GradientSet::zeros_like(&net.layers);
        let mut state = TrainLoopState::new(0.1).unwrap();
        net.sgd_step(&mut state, &grads).unwrap();
        assert_eq!(net.params, before);
        assert_eq!(state.step, 1);
    }

    #[test]
    fn sgd_step_direct_arithmetic() {
        let mut net = Network::dense(1, &[], 1, 0).unwrap();
        net.params.0[0].weights[0] = 1.0;
        net.params.0[0].bias[0] = 0.0;
        let mut grads = GradientSet::zeros_like(&net.layers);
        grads.0 .0[0].weights[0] = 0.5;
        let mut state = TrainLoopState::new(0.1).unwrap();
        net.sgd_step(&mut state, &grads).unwrap();
        assert!((net.params.0[0].weights[0] - 0.95).abs() < 1e-15);
    }

    #[test]
    fn sgd_on_quadratic_decays_geometrically() {
        // L(θ) = θ²/2 ⇒ g = θ; 100 steps at η=0.1 from θ=1 gives 0.9^100.
        let mut theta = 1.0_f64;
        for _ in 0..100 {
            theta -= 0.1 * theta;
        }
        assert!((theta - 0.9_f64.powi(100)).abs() < 1e-18);
        assert!((theta - 2.6561398887587544e-5).abs() < 1e-12);
    }

    #[test]
    fn sgd_rejects_non_finite_gradient() {
        let mut net = Network::dense(1, &[], 1, 0).unwrap();
        let mut grads = GradientSet::zeros_like(&net.layers);
        grads.0 .0[0].weights[0] = f64::NAN;
        let mut state = TrainLoopState::new(0.1).unwrap();
        assert!(matches!(
            net.sgd_step(&mut state, &grads).unwrap_err(),
            Error::Numeric(_)
        ));
    }

    #[test]
    fn accuracy_tie_breaks_to_lowest_class() {
        // All-zero net: constant logits, class 0 always predicted.
        let mut net = Network::dense(4, &[], 2, 0).unwrap();
        for p in net.params.iter_mut() {
            *p = 0.0;
        }
        let images = vec![vec![0.1; 4], vec![0.2; 4], vec![0.3; 4], vec![0.4; 4]];
        let data = Dataset::new(images, vec![0, 1, 0, 1], 2, 2, Role::SourceTest).unwrap();
        let acc = net.accuracy(&data).unwrap();
        assert!((acc - 0.5).abs() < 1e-12);
    }

    #[test]
    fn accuracy_rejects_empty_dataset() {
        let net = Network::dense(4, &[], 2, 0).unwrap();
        assert!(Dataset::new(vec![], vec![], 2, 2, Role::SourceTest).is_err());
        let _ = net; // empty datasets cannot even be constructed
    }

    #[test]
    fn forward_is_pure() {
        let net = Network::dense(5, &[4], 3, 9).unwrap();
        let batch = toy_batch(2, 5, &[0.1, 0.2, 0.3, 0.4, 0.5, -0.1, -0.2, -0.3, -0.4, -0.5]);
        let a = net.forward(&batch).unwrap();
        let b = net.forward(&batch).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn memorizes_small_dataset() {
        let mut net = Network::dense(4, &[8], 3, 3).unwrap();
        let images: Vec<Vec<f64>> = (0..9)
            .map(|i| (0..4).map(|j| if j == i % 3 { 1.0 } else { 0.1 }).collect())
            .collect();
        let labels: Vec<usize> = (0..9).map(|i| i % 3).collect();
        let data = Dataset::new(images, labels, 2, 3, Role::SourceTrain).unwrap();
        net.train(&data, 200, 0.5, 4, 11).unwrap();
        assert_eq!(net.accuracy(&data).unwrap(), 1.0);
    }

    #[test]
    fn training_is_deterministic() {
        let make = || {
            let mut net = Network::dense(4, &[6], 2, 5).unwrap();
            let images: Vec<Vec<f64>> =
                (0..8).map(|i| vec![i as f64 / 8.0; 4]).collect();
            let labels: Vec<usize> = (0..8).map(|i| i / 4).collect();
            let data = Dataset::new(images, labels, 2, 2, Role::SourceTrain).unwrap();
            net.train(&data, 10, 0.1, 3, 77).unwrap();
            net.params
        };
        assert_eq!(make(), make());
    }
}
