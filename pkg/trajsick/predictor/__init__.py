from .model import (
    FitResult,
    SessionPrediction,
    UserModel,
    build_samples,
    classify_direction,
    direction_from_probabilities,
    fit_user_model,
    load_model,
    predict_delta,
    predict_session,
    reconstruct_scores,
    save_model,
)
from .network import Network, forward, gradient_check, init_network, loss, sgd_step
from .scaler import Scaler, apply_scaler, fit_scaler
from .training import (
    LABELS,
    LabeledSample,
    TrainingConfig,
    TrainingHistory,
    split_samples,
    train,
)
