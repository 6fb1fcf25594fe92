#include "qwlimits/capi.h"

#include <cstring>
#include <map>
#include <new>
#include <string>

#include "qw/coin.hpp"
#include "qw/experiments.hpp"
#include "qw/walk.hpp"

namespace {

qw_status map_code(qw::ErrorCode code) {
    using EC = qw::ErrorCode;
    switch (code) {
        case EC::invalid_argument: return QW_ERR_INVALID_ARGUMENT;
        case EC::not_unitary: return QW_ERR_NOT_UNITARY;
        case EC::non_hermitian: return QW_ERR_NON_HERMITIAN;
        case EC::degenerate_schedule: return QW_ERR_DEGENERATE_SCHEDULE;
        case EC::odd_step_count: return QW_ERR_ODD_STEP_COUNT;
        case EC::insufficient_data: return QW_ERR_INSUFFICIENT_DATA;
        case EC::cutoff_too_small: return QW_ERR_CUTOFF_TOO_SMALL;
        case EC::out_of_range: return QW_ERR_OUT_OF_RANGE;
        case EC::grid_mismatch: return QW_ERR_GRID_MISMATCH;
        case EC::invalid_config: return QW_ERR_INVALID_CONFIG;
        case EC::io_error: return QW_ERR_IO;
    }
    return QW_ERR_INTERNAL;
}

void copy_message(const char* msg, char* err, size_t err_len) {
    if (!err || err_len == 0) return;
    std::strncpy(err, msg, err_len - 1);
    err[err_len - 1] = '\0';
}

// Runs body() and converts exceptions to status codes.
template <typename F>
qw_status guarded(F&& body, char* err = nullptr, size_t err_len = 0) {
    try {
        body();
        return QW_OK;
    } catch (const qw::Error& e) {
        copy_message(e.what(), err, err_len);
        return map_code(e.code());
    } catch (const std::exception& e) {
        copy_message(e.what(), err, err_len);
        return QW_ERR_INTERNAL;
    } catch (...) {
        copy_message("unknown error", err, err_len);
        return QW_ERR_INTERNAL;
    }
}

qw::Mat2 coin_from_raw(const double c[8]) {
    return qw::Mat2{{c[0], c[1]}, {c[2], c[3]}, {c[4], c[5]}, {c[6], c[7]}};
}

void coin_to_raw(const qw::Mat2& m, double out[8]) {
    out[0] = m.m00.real();
    out[1] = m.m00.imag();
    out[2] = m.m01.real();
    out[3] = m.m01.imag();
    out[4] = m.m10.real();
    out[5] = m.m10.imag();
    out[6] = m.m11.real();
    out[7] = m.m11.imag();
}

}  // namespace

struct qw_field {
    qw::SpinorField impl;
};

extern "C" {

const char* qw_status_message(qw_status status) {
    switch (status) {
        case QW_OK: return "ok";
        case QW_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QW_ERR_NOT_UNITARY: return "matrix is not unitary";
        case QW_ERR_NON_HERMITIAN: return "matrix is not Hermitian";
        case QW_ERR_DEGENERATE_SCHEDULE: return "degenerate schedule";
        case QW_ERR_ODD_STEP_COUNT: return "odd step count";
        case QW_ERR_INSUFFICIENT_DATA: return "insufficient data";
        case QW_ERR_CUTOFF_TOO_SMALL: return "kernel cutoff too small";
        case QW_ERR_OUT_OF_RANGE: return "argument out of range";
        case QW_ERR_GRID_MISMATCH: return "grid mismatch";
        case QW_ERR_INVALID_CONFIG: return "invalid configuration";
        case QW_ERR_IO: return "i/o error";
        case QW_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qw_version(void) { return "1.0.0"; }

qw_field* qw_field_create(int n_sites, double dx, qw_status* status) {
    qw_field* out = nullptr;
    const qw_status st = guarded([&] {
        out = new qw_field{qw::SpinorField(qw::Grid(n_sites, dx))};
    });
    if (status) *status = st;
    return out;
}

void qw_field_destroy(qw_field* field) { delete field; }

qw_field* qw_field_clone(const qw_field* field, qw_status* status) {
    if (!field) {
        if (status) *status = QW_ERR_INVALID_ARGUMENT;
        return nullptr;
    }
    qw_field* out = nullptr;
    const qw_status st = guarded([&] { out = new qw_field{field->impl}; });
    if (status) *status = st;
    return out;
}

int qw_field_n_sites(const qw_field* field) { return field ? field->impl.grid.n_sites : -1; }
double qw_field_dx(const qw_field* field) { return field ? field->impl.grid.dx : -1.0; }

qw_status qw_field_set(qw_field* field, int site, double re_l, double im_l, double re_r,
                       double im_r) {
    if (!field) return QW_ERR_INVALID_ARGUMENT;
    if (site < 0 || site >= field->impl.grid.n_sites) return QW_ERR_OUT_OF_RANGE;
    field->impl.data[static_cast<std::size_t>(site)] = {{re_l, im_l}, {re_r, im_r}};
    return QW_OK;
}

qw_status qw_field_get(const qw_field* field, int site, double* re_l, double* im_l, double* re_r,
                       double* im_r) {
    if (!field || !re_l || !im_l || !re_r || !im_r) return QW_ERR_INVALID_ARGUMENT;
    if (site < 0 || site >= field->impl.grid.n_sites) return QW_ERR_OUT_OF_RANGE;
    const auto& s = field->impl.data[static_cast<std::size_t>(site)];
    *re_l = s.l.real();
    *im_l = s.l.imag();
    *re_r = s.r.real();
    *im_r = s.r.imag();
    return QW_OK;
}

double qw_field_norm(const qw_field* field) {
    return field ? qw::total_norm(field->impl) : -1.0;
}

qw_status qw_coin_hadamard(double out[8]) {
    if (!out) return QW_ERR_INVALID_ARGUMENT;
    return guarded([&] { coin_to_raw(qw::hadamard_coin().mat(), out); });
}

qw_status qw_coin_zyz(double delta, double psi, double theta, double phi, double out[8]) {
    if (!out) return QW_ERR_INVALID_ARGUMENT;
    return guarded([&] { coin_to_raw(qw::compose_zyz({delta, psi, theta, phi}).mat(), out); });
}

qw_status qw_coin_root_unity(int l, int m, double nx, double ny, double nz, double out[8]) {
    if (!out) return QW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        coin_to_raw(qw::root_unity_coin(l, m, qw::PauliAxis(nx, ny, nz)).mat(), out);
    });
}

qw_status qw_walk_evolve(qw_field* field, const double coin[8], long steps) {
    if (!field || !coin) return QW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const qw::Unitary2 u(coin_from_raw(coin));
        field->impl = qw::evolve(std::move(field->impl), u, steps);
    });
}

qw_status qw_walk_shift(qw_field* field) {
    if (!field) return QW_ERR_INVALID_ARGUMENT;
    return guarded([&] { field->impl = qw::apply_shift(field->impl); });
}

int qw_experiment_count(void) { return static_cast<int>(qw::experiment_names().size()); }

const char* qw_experiment_name(int i) {
    const auto& names = qw::experiment_names();
    if (i < 0 || static_cast<std::size_t>(i) >= names.size()) return nullptr;
    return names[static_cast<std::size_t>(i)].c_str();
}

const char* qw_experiment_describe(const char* name) {
    if (!name) return nullptr;
    // descriptions are static; hand out stable pointers
    static std::map<std::string, std::string> cache;
    try {
        auto it = cache.find(name);
        if (it == cache.end())
            it = cache.emplace(name, qw::describe_experiment(name)).first;
        return it->second.c_str();
    } catch (...) {
        return nullptr;
    }
}

qw_status qw_experiment_run(const char* experiment, const char* const* keys,
                            const char* const* values, int n_params, const char* out_dir,
                            uint64_t seed, int jobs, int* pass_out, char* err, size_t err_len) {
    if (!experiment || !out_dir || n_params < 0 || (n_params > 0 && (!keys || !values)))
        return QW_ERR_INVALID_ARGUMENT;
    return guarded(
        [&] {
            qw::ExperimentConfig cfg;
            cfg.experiment = experiment;
            for (int i = 0; i < n_params; ++i) {
                if (!keys[i] || !values[i])
                    throw qw::Error(qw::ErrorCode::invalid_config, "null parameter entry");
                cfg.params[keys[i]] = values[i];
            }
            cfg.output_dir = out_dir;
            cfg.seed = seed;
            cfg.jobs = jobs < 1 ? 1 : jobs;
            const qw::RunSummary summary = qw::run(cfg);
            if (pass_out) *pass_out = summary.pass ? 1 : 0;
        },
        err, err_len);
}

}  // extern "C"
