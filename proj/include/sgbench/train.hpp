#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "sgbench/errors.hpp"
#include "sgbench/lexicons.hpp"
#include "sgbench/parallel.hpp"
#include "sgbench/rng.hpp"
#include "sgbench/structure_model.hpp"
#include "sgbench/tsv.hpp"
#include "sgbench/types.hpp"
#include "sgbench/version.hpp"

namespace sgbench {

struct TrainConfig {
    DatasetId dataset = DatasetId::SynPaths;
    ModelKind kind = ModelKind::DistMult;
    int batch_size = 1024;
    int dim = 64;
    double lr = 1e-3;
    bool biases = false;
    InitScheme init = InitScheme::Uniform;
    int epochs = 50;
    int patience = 5;       // early stop on the validation codelength
    uint64_t seed = 42;
    int threads = 0;        // 0 = hardware concurrency
    size_t valid_subset = 2000;  // graphs used for per-epoch validation
    int transe_norm = 2;
};

// Hyperparameter defaults per (dataset, model) from the reference
// configuration sweep, plus per-dataset epoch budgets.
inline TrainConfig default_train_config(DatasetId dataset, ModelKind kind) {
    TrainConfig c;
    c.dataset = dataset;
    c.kind = kind;
    struct Row {
        DatasetId dataset;
        ModelKind kind;
        int batch;
        int dim;
        double lr;
        bool biases;
        InitScheme init;
    };
    static const Row kRows[] = {
        {DatasetId::SynPaths, ModelKind::TransE, 4096, 1531, 7.029817939842623e-05, false,
         InitScheme::Uniform},
        {DatasetId::SynPaths, ModelKind::DistMult, 4096, 158, 0.0697979730927795, false,
         InitScheme::Uniform},
        {DatasetId::SynPaths, ModelKind::ComplEx, 4096, 587, 5.264944612887405e-05, false,
         InitScheme::Uniform},
        {DatasetId::SynTipr, ModelKind::TransE, 2048, 147, 0.0008716274682049251, true,
         InitScheme::Normal},
        {DatasetId::SynTipr, ModelKind::DistMult, 2048, 168, 0.005497983171450242, true,
         InitScheme::Normal},
        {DatasetId::SynTipr, ModelKind::ComplEx, 2048, 350, 0.0015597556675205502, true,
         InitScheme::Normal},
        {DatasetId::SynTypes, ModelKind::TransE, 2048, 376, 0.003017403610019781, true,
         InitScheme::Uniform},
        {DatasetId::SynTypes, ModelKind::DistMult, 2048, 273, 0.0006013105272716594, true,
         InitScheme::Uniform},
        {DatasetId::SynTypes, ModelKind::ComplEx, 2048, 996, 5.603405855158606e-05, false,
         InitScheme::Uniform},
        {DatasetId::WdMovies, ModelKind::TransE, 4096, 68, 0.000638003263107625, false,
         InitScheme::Normal},
        {DatasetId::WdMovies, ModelKind::DistMult, 4096, 181, 0.00307853821840767, true,
         InitScheme::Uniform},
        {DatasetId::WdMovies, ModelKind::ComplEx, 4096, 102, 0.019520125878695407, false,
         InitScheme::Uniform},
        {DatasetId::WdArticles, ModelKind::TransE, 32, 888, 6.094053758340765e-05, true,
         InitScheme::Normal},
        {DatasetId::WdArticles, ModelKind::DistMult, 32, 65, 0.03833121378755901, false,
         InitScheme::Uniform},
        {DatasetId::WdArticles, ModelKind::ComplEx, 32, 283, 0.002251396972378282, false,
         InitScheme::Normal},
    };
    for (const Row& row : kRows) {
        if (row.dataset != dataset || row.kind != kind) continue;
        c.batch_size = row.batch;
        c.dim = row.dim;
        c.lr = row.lr;
        c.biases = row.biases;
        c.init = row.init;
    }
    switch (dataset) {
        case DatasetId::SynPaths: c.epochs = 50; break;
        case DatasetId::SynTypes: c.epochs = 20; break;
        case DatasetId::SynTipr: c.epochs = 20; break;
        default: c.epochs = 20; break;
    }
    if (kind == ModelKind::Random) c.epochs = 0;
    return c;
}

// ---------------------------------------------------------------------------
// Gradients of the per-graph NLL (natural log) w.r.t. every parameter.
// ---------------------------------------------------------------------------

struct Gradients {
    std::vector<double> entity_emb;
    std::vector<double> relation_emb;
    std::vector<double> entity_bias;
    std::vector<double> relation_bias;

    void resize_like(const StructureModel& m) {
        entity_emb.assign(m.entity_emb.size(), 0.0);
        relation_emb.assign(m.relation_emb.size(), 0.0);
        entity_bias.assign(m.entity_bias.size(), 0.0);
        relation_bias.assign(m.relation_bias.size(), 0.0);
    }
    void clear() {
        std::fill(entity_emb.begin(), entity_emb.end(), 0.0);
        std::fill(relation_emb.begin(), relation_emb.end(), 0.0);
        std::fill(entity_bias.begin(), entity_bias.end(), 0.0);
        std::fill(relation_bias.begin(), relation_bias.end(), 0.0);
    }
    void add(const Gradients& other) {
        auto axpy = [](std::vector<double>& a, const std::vector<double>& b) {
            for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        };
        axpy(entity_emb, other.entity_emb);
        axpy(relation_emb, other.relation_emb);
        axpy(entity_bias, other.entity_bias);
        axpy(relation_bias, other.relation_bias);
    }
};

// NLL of one graph in nats (sum over its candidate space).
inline double graph_nll_nats(const StructureModel& m, const Subgraph& g,
                             std::span<const EntityId> entities) {
    constexpr double ln2 = 0.6931471805599453;
    return -structure_log2_prob(g, entities, m) * ln2;
}

// Adds d(NLL_nats)/dtheta for one graph into `grad`; returns the graph NLL.
// Candidate order matches structure_log2_prob exactly.
inline double accumulate_graph_gradient(const StructureModel& m, const Subgraph& g,
                                        std::span<const EntityId> given_entities,
                                        Gradients& grad, std::vector<double>& scratch) {
    if (m.kind == ModelKind::Random) return graph_nll_nats(m, g, given_entities);
    CandidateSpace space(given_entities, m.n_relations);
    std::unordered_set<uint64_t> positives;
    positives.reserve(g.size() * 2);
    for (const Triple& t : g.triples()) {
        if (!std::binary_search(space.entities.begin(), space.entities.end(), t.subject) ||
            !std::binary_search(space.entities.begin(), space.entities.end(), t.object))
            throw ContractError("graph entity missing from the given entity list");
        positives.insert(pack_triple(t));
    }

    const size_t d = static_cast<size_t>(m.dim);
    scratch.resize(2 * d);
    double nll = 0.0;

    for (EntityId s : space.entities) {
        const double* srow = m.entity_row(s);
        double* gs = grad.entity_emb.data() + m.width() * s;
        for (RelationId r = 0; r < static_cast<RelationId>(space.n_relations); ++r) {
            const double* rrow = m.relation_row(r);
            double* gr = grad.relation_emb.data() + m.width() * r;
            // per-(s,r) precomputation
            if (m.kind == ModelKind::TransE) {
                for (size_t i = 0; i < d; ++i) scratch[i] = srow[i] + rrow[i];
            } else if (m.kind == ModelKind::ComplEx) {
                const double *a = srow, *b = srow + d, *c = rrow, *dd = rrow + d;
                for (size_t i = 0; i < d; ++i) {
                    scratch[i] = a[i] * c[i] - b[i] * dd[i];      // P
                    scratch[d + i] = a[i] * dd[i] + b[i] * c[i];  // Q
                }
            }
            for (EntityId o : space.entities) {
                const double* orow = m.entity_row(o);
                double* go = grad.entity_emb.data() + m.width() * o;
                double x = 0.0;
                double norm = 0.0;
                switch (m.kind) {
                    case ModelKind::TransE:
                        if (m.transe_norm == 1) {
                            for (size_t i = 0; i < d; ++i) x += std::abs(scratch[i] - orow[i]);
                        } else {
                            for (size_t i = 0; i < d; ++i) {
                                double diff = scratch[i] - orow[i];
                                x += diff * diff;
                            }
                            norm = std::sqrt(x);
                            x = norm;
                        }
                        x = -x;
                        break;
                    case ModelKind::DistMult:
                        for (size_t i = 0; i < d; ++i) x += srow[i] * rrow[i] * orow[i];
                        break;
                    case ModelKind::ComplEx:
                        for (size_t i = 0; i < d; ++i)
                            x += scratch[i] * orow[i] + scratch[d + i] * orow[d + i];
                        break;
                    default: break;
                }
                if (m.use_biases) x += m.entity_bias[s] + m.relation_bias[r] + m.entity_bias[o];

                bool positive = positives.count(pack_triple({s, r, o})) != 0;
                nll += softplus(positive ? -x : x);
                double gx = logistic(x) - (positive ? 1.0 : 0.0);

                switch (m.kind) {
                    case ModelKind::TransE: {
                        if (m.transe_norm == 1) {
                            for (size_t i = 0; i < d; ++i) {
                                double diff = scratch[i] - orow[i];
                                double sign = diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0);
                                gs[i] += -gx * sign;
                                gr[i] += -gx * sign;
                                go[i] += gx * sign;
                            }
                        } else if (norm > 0) {
                            double inv = gx / norm;
                            for (size_t i = 0; i < d; ++i) {
                                double diff = scratch[i] - orow[i];
                                gs[i] += -inv * diff;
                                gr[i] += -inv * diff;
                                go[i] += inv * diff;
                            }
                        }
                        break;
                    }
                    case ModelKind::DistMult:
                        for (size_t i = 0; i < d; ++i) {
                            gs[i] += gx * rrow[i] * orow[i];
                            gr[i] += gx * srow[i] * orow[i];
                            go[i] += gx * srow[i] * rrow[i];
                        }
                        break;
                    case ModelKind::ComplEx: {
                        const double *a = srow, *b = srow + d, *c = rrow, *dd = rrow + d;
                        const double *e = orow, *f = orow + d;
                        double *ga = gs, *gb = gs + d, *gc = gr, *gd = gr + d;
                        double *ge = go, *gf = go + d;
                        for (size_t i = 0; i < d; ++i) {
                            ga[i] += gx * (c[i] * e[i] + dd[i] * f[i]);
                            gb[i] += gx * (c[i] * f[i] - dd[i] * e[i]);
                            gc[i] += gx * (a[i] * e[i] + b[i] * f[i]);
                            gd[i] += gx * (a[i] * f[i] - b[i] * e[i]);
                            ge[i] += gx * scratch[i];
                            gf[i] += gx * scratch[d + i];
                        }
                        break;
                    }
                    default: break;
                }
                if (m.use_biases) {
                    grad.entity_bias[s] += gx;
                    grad.relation_bias[r] += gx;
                    grad.entity_bias[o] += gx;
                }
            }
        }
    }
    return nll;
}

// ---------------------------------------------------------------------------
// Adam optimiser (dense) and the training loop.
// ---------------------------------------------------------------------------

class Adam {
public:
    Adam(double lr, size_t n_params) : lr_(lr), m_(n_params, 0.0), v_(n_params, 0.0) {}

    void step(std::span<double> params, std::span<const double> grads) {
        ++t_;
        double correction1 = 1.0 - std::pow(beta1_, t_);
        double correction2 = 1.0 - std::pow(beta2_, t_);
        for (size_t i = 0; i < params.size(); ++i) {
            double g = grads[i];
            m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g * g;
            double mhat = m_[i] / correction1;
            double vhat = v_[i] / correction2;
            params[i] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
        }
    }

private:
    double lr_;
    double beta1_ = 0.9;
    double beta2_ = 0.999;
    double eps_ = 1e-8;
    long t_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

struct TrainResult {
    StructureModel model;                  // best-validation parameters
    std::vector<double> valid_bits;        // per-epoch mean structure bits
    std::vector<double> train_loss_bits;   // per-epoch mean training bits
    int best_epoch = -1;
    int epochs_run = 0;
};

namespace train_detail {

// Flat view over all parameter tensors so one Adam instance covers them.
struct ParamView {
    std::vector<std::span<double>> parts;
    size_t total = 0;
    explicit ParamView(StructureModel& m) {
        for (auto* v : {&m.entity_emb, &m.relation_emb, &m.entity_bias, &m.relation_bias}) {
            parts.emplace_back(*v);
            total += v->size();
        }
    }
};

inline void flatten(const Gradients& g, std::vector<double>& out) {
    out.clear();
    for (const auto* v : {&g.entity_emb, &g.relation_emb, &g.entity_bias, &g.relation_bias})
        out.insert(out.end(), v->begin(), v->end());
}

inline std::vector<double> flatten_params(const StructureModel& m) {
    std::vector<double> out;
    for (const auto* v : {&m.entity_emb, &m.relation_emb, &m.entity_bias, &m.relation_bias})
        out.insert(out.end(), v->begin(), v->end());
    return out;
}

inline void unflatten_params(StructureModel& m, std::span<const double> flat) {
    size_t off = 0;
    for (auto* v : {&m.entity_emb, &m.relation_emb, &m.entity_bias, &m.relation_bias}) {
        std::copy(flat.begin() + off, flat.begin() + off + v->size(), v->begin());
        off += v->size();
    }
}

}  // namespace train_detail

// Mean structure codelength (bits) over `graphs`, parallel across graphs.
inline double mean_structure_bits(const StructureModel& model,
                                  std::span<const Subgraph> graphs, int threads) {
    if (graphs.empty()) return 0.0;
    std::vector<double> bits(graphs.size(), 0.0);
    parallel_chunks(graphs.size(), threads, [&](size_t, size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            std::vector<EntityId> entities = graphs[i].entities();
            bits[i] = structure_codelength_bits(graphs[i], entities, model);
        }
    });
    double sum = 0.0;
    for (double b : bits) sum += b;
    return sum / static_cast<double>(graphs.size());
}

// Maximum-likelihood training of p(S|E): Adam over mini-batches of
// subgraphs, full negative candidate space per graph, best parameters by
// validation codelength with early stopping.
inline TrainResult train(const DatasetBundle& bundle, const TrainConfig& config) {
    constexpr double ln2 = 0.6931471805599453;
    const std::vector<Subgraph>& train_graphs = bundle.train;
    if (train_graphs.empty()) throw ContractError("training split is empty");

    TrainResult result;
    StructureModel model =
        StructureModel::create(config.kind, bundle.vocabulary.n_entities(),
                               bundle.vocabulary.n_relations(), config.dim, config.biases,
                               config.init, config.seed);
    model.transe_norm = config.transe_norm;
    if (config.kind == ModelKind::Random || config.epochs == 0) {
        result.model = std::move(model);
        return result;
    }

    std::vector<std::vector<EntityId>> entity_lists(train_graphs.size());
    for (size_t i = 0; i < train_graphs.size(); ++i) entity_lists[i] = train_graphs[i].entities();

    size_t n_valid = std::min(config.valid_subset, bundle.valid.size());
    std::span<const Subgraph> valid_view(bundle.valid.data(), n_valid);

    train_detail::ParamView params(model);
    Adam adam(config.lr, params.total);
    int threads = resolve_threads(config.threads);
    std::vector<Gradients> thread_grads(static_cast<size_t>(threads));
    std::vector<std::vector<double>> thread_scratch(static_cast<size_t>(threads));
    std::vector<double> thread_loss(static_cast<size_t>(threads));
    Gradients total_grad;
    total_grad.resize_like(model);
    std::vector<double> flat_grad;

    std::vector<size_t> order(train_graphs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<double> best_params;
    double best_valid = std::numeric_limits<double>::infinity();
    int since_best = 0;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        // seeded in-place shuffle; epoch-indexed stream
        Pcg32 shuffle_rng = derive_stream(config.seed, 0x5f0f, static_cast<uint64_t>(epoch));
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[shuffle_rng.below(static_cast<uint32_t>(i))]);

        double epoch_loss_nats = 0.0;
        size_t batch_begin = 0;
        int step = 0;
        while (batch_begin < order.size()) {
            size_t batch_end =
                std::min(order.size(), batch_begin + static_cast<size_t>(config.batch_size));
            size_t batch_n = batch_end - batch_begin;
            parallel_chunks(batch_n, threads, [&](size_t chunk, size_t begin, size_t end) {
                Gradients& grad = thread_grads[chunk];
                if (grad.entity_emb.size() != model.entity_emb.size()) grad.resize_like(model);
                double loss = 0.0;
                for (size_t k = begin; k < end; ++k) {
                    size_t g = order[batch_begin + k];
                    loss += accumulate_graph_gradient(model, train_graphs[g], entity_lists[g],
                                                      grad, thread_scratch[chunk]);
                }
                thread_loss[chunk] = loss;
            });
            // deterministic merge: chunk order
            total_grad.clear();
            double batch_loss = 0.0;
            size_t used_chunks = std::min(static_cast<size_t>(threads), batch_n ? batch_n : 1);
            for (size_t c = 0; c < used_chunks; ++c) {
                if (thread_grads[c].entity_emb.empty()) continue;
                total_grad.add(thread_grads[c]);
                thread_grads[c].clear();
                batch_loss += thread_loss[c];
                thread_loss[c] = 0.0;
            }
            if (!std::isfinite(batch_loss))
                throw TrainingError("loss diverged at epoch " + std::to_string(epoch) +
                                    " step " + std::to_string(step));
            epoch_loss_nats += batch_loss;

            train_detail::flatten(total_grad, flat_grad);
            double inv_n = 1.0 / static_cast<double>(batch_n);
            for (double& g : flat_grad) g *= inv_n;
            size_t off = 0;
            for (std::span<double> part : params.parts) {
                adam.step(part, std::span<const double>(flat_grad.data() + off, part.size()));
                off += part.size();
            }
            ++step;
            batch_begin = batch_end;
        }
        if (!model.finite())
            throw TrainingError("non-finite parameters after epoch " + std::to_string(epoch));

        result.train_loss_bits.push_back(epoch_loss_nats / ln2 /
                                         static_cast<double>(train_graphs.size()));
        double valid_bits = mean_structure_bits(model, valid_view, threads);
        result.valid_bits.push_back(valid_bits);
        result.epochs_run = epoch + 1;

        if (valid_bits < best_valid) {
            best_valid = valid_bits;
            best_params = train_detail::flatten_params(model);
            result.best_epoch = epoch;
            since_best = 0;
        } else if (++since_best > config.patience) {
            break;
        }
    }

    if (!best_params.empty()) train_detail::unflatten_params(model, best_params);
    result.model = std::move(model);
    return result;
}

// ---------------------------------------------------------------------------
// Checkpoints: msgpack container with little-endian double tensors.
// ---------------------------------------------------------------------------

inline constexpr int kCheckpointVersion = 1;

namespace train_detail {

inline nlohmann::json tensor_to_json(const std::vector<double>& v) {
    std::vector<uint8_t> bytes(v.size() * sizeof(double));
    std::memcpy(bytes.data(), v.data(), bytes.size());
    return nlohmann::json::binary(std::move(bytes));
}

inline std::vector<double> tensor_from_json(const nlohmann::json& j) {
    const auto& bytes = j.get_binary();
    if (bytes.size() % sizeof(double) != 0) throw IntegrityError("bad tensor payload");
    std::vector<double> v(bytes.size() / sizeof(double));
    std::memcpy(v.data(), bytes.data(), bytes.size());
    return v;
}

}  // namespace train_detail

inline void save_checkpoint(const std::filesystem::path& path, const StructureModel& model,
                            const nlohmann::json& manifest) {
    nlohmann::json j;
    j["format_version"] = kCheckpointVersion;
    j["tool_version"] = kToolVersion;
    j["kind"] = model_kind_name(model.kind);
    j["dim"] = model.dim;
    j["biases"] = model.use_biases;
    j["init"] = init_scheme_name(model.init);
    j["transe_norm"] = model.transe_norm;
    j["n_entities"] = model.n_entities;
    j["n_relations"] = model.n_relations;
    j["entity_emb"] = train_detail::tensor_to_json(model.entity_emb);
    j["relation_emb"] = train_detail::tensor_to_json(model.relation_emb);
    j["entity_bias"] = train_detail::tensor_to_json(model.entity_bias);
    j["relation_bias"] = train_detail::tensor_to_json(model.relation_bias);
    j["manifest"] = manifest;
    std::vector<uint8_t> payload = nlohmann::json::to_msgpack(j);
    write_file_bytes(path, std::string_view(reinterpret_cast<const char*>(payload.data()),
                                            payload.size()));
}

struct Checkpoint {
    StructureModel model;
    nlohmann::json manifest;
};

inline Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::string bytes = read_file_bytes(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::from_msgpack(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw IntegrityError("unreadable checkpoint " + path.string() + ": " + e.what());
    }
    if (j.value("format_version", -1) != kCheckpointVersion)
        throw IntegrityError("unsupported checkpoint version in " + path.string());
    Checkpoint cp;
    auto kind = model_kind_from_name(j.at("kind").get<std::string>());
    auto init = init_scheme_from_name(j.at("init").get<std::string>());
    if (!kind || !init) throw IntegrityError("bad checkpoint fields in " + path.string());
    cp.model.kind = *kind;
    cp.model.dim = j.at("dim").get<int>();
    cp.model.use_biases = j.at("biases").get<bool>();
    cp.model.init = *init;
    cp.model.transe_norm = j.value("transe_norm", 2);
    cp.model.n_entities = j.at("n_entities").get<size_t>();
    cp.model.n_relations = j.at("n_relations").get<size_t>();
    cp.model.entity_emb = train_detail::tensor_from_json(j.at("entity_emb"));
    cp.model.relation_emb = train_detail::tensor_from_json(j.at("relation_emb"));
    cp.model.entity_bias = train_detail::tensor_from_json(j.at("entity_bias"));
    cp.model.relation_bias = train_detail::tensor_from_json(j.at("relation_bias"));
    cp.manifest = j.value("manifest", nlohmann::json::object());
    if (!cp.model.finite()) throw IntegrityError("checkpoint holds non-finite parameters");
    return cp;
}

}  // namespace sgbench
