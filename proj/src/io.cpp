#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qh/io.hpp"

namespace qh {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json scalar_to_json(const Scalar& s, const FieldPtr& f) {
    const long m = f->degree();
    std::vector<Int> nums(m, Int(0));
    Int den(1);
    if (!s.is_zero()) {
        for (long i = 0; i < m; ++i) {
            Int d = s.coeffs()[i].get_den();
            den = den / gcd(den, d) * d;  // lcm
        }
        for (long i = 0; i < m; ++i) {
            const Rat& c = s.coeffs()[i];
            nums[i] = c.get_num() * (den / c.get_den());
        }
        Int g = den;
        for (long i = 0; i < m; ++i) g = gcd(g, nums[i]);
        if (g > 1) {
            den /= g;
            for (auto& n : nums) n /= g;
        }
    }
    ordered_json j;
    auto emit = [](const Int& v) -> ordered_json {
        // JSON integers when they fit; decimal strings beyond 64 bits
        if (v.fits_slong_p()) return ordered_json(v.get_si());
        return ordered_json(v.get_str());
    };
    j["num"] = ordered_json::array();
    for (const auto& n : nums) j["num"].push_back(emit(n));
    j["den"] = emit(den);
    return j;
}

Scalar scalar_from_json(const ordered_json& j, const FieldPtr& f) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw FormatError("scalar must be an object with num and den");
    const auto& num = j["num"];
    if (!num.is_array() || static_cast<long>(num.size()) != f->degree())
        throw FormatError("scalar num length does not match phi(N)");
    auto read_int = [](const ordered_json& v) -> Int {
        if (v.is_string()) return Int(v.get<std::string>());
        if (v.is_number_integer()) return Int(v.get<long>());
        throw FormatError("integers must be JSON integers or decimal strings");
    };
    Int den = read_int(j["den"]);
    if (den <= 0) throw FormatError("scalar denominator must be positive");
    std::vector<Rat> c(f->degree());
    for (long i = 0; i < f->degree(); ++i) {
        c[i] = Rat(read_int(num[i]), den);
        c[i].canonicalize();
    }
    return Scalar::from_coeffs(f, std::move(c));
}

ordered_json vec_to_json(const DVec& v, const FieldPtr& f) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : v) arr.push_back(scalar_to_json(s, f));
    return arr;
}

DVec vec_from_json(const ordered_json& j, const FieldPtr& f, long dim) {
    if (!j.is_array() || static_cast<long>(j.size()) != dim)
        throw FormatError("coefficient vector has wrong length");
    DVec v;
    v.reserve(dim);
    for (const auto& e : j) v.push_back(scalar_from_json(e, f));
    return v;
}

ordered_json sparse_tensor_to_json(const Tensor& t) {
    ordered_json arr = ordered_json::array();
    long legs[kMaxRank];
    for (const auto& [flat, c] : t.nonzeros()) {
        t.unflatten(flat, legs);
        ordered_json e;
        e["i"] = ordered_json::array();
        for (int j = 0; j < t.rank(); ++j) e["i"].push_back(legs[j]);
        e["c"] = scalar_to_json(c, t.field());
        arr.push_back(std::move(e));
    }
    return arr;
}

Tensor sparse_tensor_from_json(const ordered_json& j, const FieldPtr& f, long dim,
                               int rank) {
    Tensor t(f, dim, rank);
    if (!j.is_array()) throw FormatError("sparse tensor must be an array of entries");
    for (const auto& e : j) {
        if (!e.contains("i") || !e.contains("c") || !e["i"].is_array() ||
            static_cast<int>(e["i"].size()) != rank)
            throw FormatError("sparse tensor entry needs rank-many indices and a coefficient");
        long flat = 0;
        for (const auto& idx : e["i"]) {
            long v = idx.get<long>();
            if (v < 0 || v >= dim) throw FormatError("tensor index out of range");
            flat = flat * dim + v;
        }
        t.at(flat) += scalar_from_json(e["c"], f);
    }
    return t;
}

}  // namespace

std::string digest_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

std::string serialize_algebra(const AlgebraFile& a) {
    const QuasiHopf& H = a.H;
    const FieldPtr& f = H.field();
    const long d = H.dim();
    ordered_json j;
    j["name"] = a.name;
    j["dim"] = d;
    j["cyclotomic_order"] = f->order();
    j["basis"] = H.B.basis;
    j["unit"] = vec_to_json(H.B.mult.unit, f);
    {
        ordered_json mult = ordered_json::array();
        for (long i = 0; i < d; ++i) {
            ordered_json row = ordered_json::array();
            for (long k = 0; k < d; ++k) {
                DVec p(d, Scalar::zero(f));
                for (const auto& [idx, c] : H.B.mult.basis_prod(i, k)) p[idx] = c;
                row.push_back(vec_to_json(p, f));
            }
            mult.push_back(std::move(row));
        }
        j["mult"] = std::move(mult);
    }
    {
        ordered_json counit = ordered_json::array();
        for (long i = 0; i < d; ++i)
            counit.push_back(scalar_to_json(H.B.counit.at(0, i), f));
        j["counit"] = std::move(counit);
    }
    {
        ordered_json comult = ordered_json::array();
        for (long i = 0; i < d; ++i) {
            DVec col(d * d, Scalar::zero(f));
            for (const auto& [r, c] : H.B.comult.col(i)) col[r] = c;
            comult.push_back(vec_to_json(col, f));
        }
        j["comult"] = std::move(comult);
    }
    {
        ordered_json sp = ordered_json::array();
        for (long i = 0; i < d; ++i) {
            DVec col(d, Scalar::zero(f));
            for (const auto& [r, c] : H.antipode.col(i)) col[r] = c;
            sp.push_back(vec_to_json(col, f));
        }
        j["antipode"] = std::move(sp);
    }
    j["alpha"] = vec_to_json(H.alpha.to_vec(), f);
    j["beta"] = vec_to_json(H.beta.to_vec(), f);
    j["phi"] = sparse_tensor_to_json(H.B.phi);
    j["phi_inv"] = sparse_tensor_to_json(H.B.phi_inv);
    if (a.r) j["r_matrix"] = sparse_tensor_to_json(*a.r);
    if (!a.modules.empty()) {
        ordered_json mods;
        for (const auto& [name, mod] : a.modules) {
            ordered_json mats = ordered_json::array();
            for (const auto& m : mod.rho) {
                ordered_json rows = ordered_json::array();
                for (long r = 0; r < mod.n; ++r) {
                    ordered_json row = ordered_json::array();
                    for (long c = 0; c < mod.n; ++c)
                        row.push_back(scalar_to_json(m.at(r, c), f));
                    rows.push_back(std::move(row));
                }
                mats.push_back(std::move(rows));
            }
            mods[name] = std::move(mats);
        }
        j["modules"] = std::move(mods);
    }
    return j.dump(2) + "\n";
}

AlgebraFile parse_algebra(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    try {
        AlgebraFile a;
        a.name = j.at("name").get<std::string>();
        long d = j.at("dim").get<long>();
        long n = j.at("cyclotomic_order").get<long>();
        if (d < 1) throw FormatError("dim must be positive");
        FieldPtr f = Field::make(n);

        QuasiHopf& H = a.H;
        H.B.field = f;
        H.B.dim = d;
        H.B.basis = j.at("basis").get<std::vector<std::string>>();
        if (static_cast<long>(H.B.basis.size()) != d)
            throw FormatError("basis label count does not match dim");

        DVec unit = vec_from_json(j.at("unit"), f, d);
        const auto& mult = j.at("mult");
        if (!mult.is_array() || static_cast<long>(mult.size()) != d)
            throw FormatError("mult table must have dim rows");
        std::vector<DVec> products(d * d, DVec(d, Scalar::zero(f)));
        for (long i = 0; i < d; ++i) {
            if (static_cast<long>(mult[i].size()) != d)
                throw FormatError("mult table row has wrong length");
            for (long k = 0; k < d; ++k)
                products[i * d + k] = vec_from_json(mult[i][k], f, d);
        }
        H.B.mult = MultTable::from_dense(f, d, std::move(unit), products);

        {
            Matrix em(f, 1, d);
            const auto& cu = j.at("counit");
            if (!cu.is_array() || static_cast<long>(cu.size()) != d)
                throw FormatError("counit must have dim entries");
            for (long i = 0; i < d; ++i) em.at(0, i) = scalar_from_json(cu[i], f);
            H.B.counit = LinearMap::from_matrix(f, d, 1, 0, std::move(em));
        }
        {
            Matrix dm(f, d * d, d);
            const auto& cm = j.at("comult");
            if (!cm.is_array() || static_cast<long>(cm.size()) != d)
                throw FormatError("comult must have dim entries");
            for (long i = 0; i < d; ++i) {
                DVec col = vec_from_json(cm[i], f, d * d);
                for (long r = 0; r < d * d; ++r) dm.at(r, i) = col[r];
            }
            H.B.comult = LinearMap::from_matrix(f, d, 1, 2, std::move(dm));
        }
        {
            Matrix sm(f, d, d);
            const auto& sp = j.at("antipode");
            if (!sp.is_array() || static_cast<long>(sp.size()) != d)
                throw FormatError("antipode must have dim columns");
            for (long i = 0; i < d; ++i) {
                DVec col = vec_from_json(sp[i], f, d);
                for (long r = 0; r < d; ++r) sm.at(r, i) = col[r];
            }
            H.antipode = LinearMap::from_matrix(f, d, 1, 1, std::move(sm));
            if (H.antipode.matrix().rank() == d)
                H.antipode_inv = H.antipode.inverse_map();
        }
        H.alpha = Tensor::from_vec(f, vec_from_json(j.at("alpha"), f, d));
        H.beta = Tensor::from_vec(f, vec_from_json(j.at("beta"), f, d));
        H.B.phi = sparse_tensor_from_json(j.at("phi"), f, d, 3);
        if (j.contains("phi_inv")) {
            // consistency with phi is one of the verified identities, not a
            // parse-level concern
            H.B.phi_inv = sparse_tensor_from_json(j["phi_inv"], f, d, 3);
        } else {
            try {
                H.B.phi_inv = tensor_invert(H.B.mult, H.B.phi);
            } catch (const NotInvertible&) {
                throw FormatError("phi is not invertible; cannot derive phi_inv");
            }
        }
        if (j.contains("r_matrix"))
            a.r = sparse_tensor_from_json(j["r_matrix"], f, d, 2);
        if (j.contains("modules")) {
            for (const auto& [name, mats] : j["modules"].items()) {
                if (!mats.is_array() || static_cast<long>(mats.size()) != d)
                    throw FormatError("module must supply one matrix per basis element");
                HModule mod;
                mod.name = name;
                mod.n = static_cast<long>(mats[0].size());
                for (const auto& mj : mats) {
                    Matrix m(f, mod.n, mod.n);
                    if (static_cast<long>(mj.size()) != mod.n)
                        throw FormatError("module matrix is not square");
                    for (long r = 0; r < mod.n; ++r) {
                        if (static_cast<long>(mj[r].size()) != mod.n)
                            throw FormatError("module matrix row has wrong length");
                        for (long c = 0; c < mod.n; ++c)
                            m.at(r, c) = scalar_from_json(mj[r][c], f);
                    }
                    mod.rho.push_back(std::move(m));
                }
                a.modules.emplace_back(name, std::move(mod));
            }
        }
        return a;
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(e.what());
    } catch (const std::exception& e) {
        throw FormatError(std::string("malformed algebra file: ") + e.what());
    }
}

AlgebraFile load_algebra(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_algebra(os.str());
}

void save_algebra(const AlgebraFile& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << serialize_algebra(a);
}

DVec parse_scalar_vector(const FieldPtr& f, long dim, const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw FormatError(std::string("invalid vector JSON: ") + e.what());
    }
    return vec_from_json(j, f, dim);
}

VerifyLevel parse_level(const std::string& s) {
    if (s == "bialgebra") return VerifyLevel::bialgebra;
    if (s == "hopf") return VerifyLevel::hopf;
    if (s == "qt") return VerifyLevel::qt;
    if (s == "ribbon") return VerifyLevel::ribbon;
    throw FormatError("unknown level: " + s);
}

std::string render_text(const ToolReport& r) {
    std::ostringstream os;
    os << kToolName << " " << kToolVersion << " — " << r.command;
    if (!r.level.empty()) os << " (level " << r.level << ")";
    os << "\n";
    if (!r.input.empty())
        os << "input: " << r.input << " (digest " << r.input_digest << ")\n";
    for (const auto& [k, v] : r.extras) os << k << ": " << v << "\n";
    os << r.checks.text();
    os << (r.ok() ? "RESULT pass" : "RESULT fail") << "\n";
    return os.str();
}

std::string render_json(const ToolReport& r) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = r.command;
    if (!r.input.empty()) {
        j["input"] = r.input;
        j["input_digest"] = r.input_digest;
    }
    if (!r.level.empty()) j["level"] = r.level;
    if (!r.extras.empty()) {
        ordered_json ex;
        for (const auto& [k, v] : r.extras) ex[k] = v;
        j["extras"] = std::move(ex);
    }
    ordered_json checks = ordered_json::array();
    for (const auto& e : r.checks.entries()) {
        ordered_json c;
        c["name"] = e.name;
        c["status"] = e.advisory ? "info" : (e.pass ? "pass" : "fail");
        if (!e.witness.empty()) c["witness"] = e.witness;
        checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    j["status"] = r.ok() ? "pass" : "fail";
    return j.dump(2) + "\n";
}

namespace {

// eta candidates for the ribbon layer when none is supplied: the
// counit-normalized central nullspace basis plus (u g)^{-1} and (g u)^{-1}
// over the pivotal candidates. Every candidate is verified before use.
std::vector<DVec> derived_eta_candidates(const QuasiHopf& H, const GaugeData& G,
                                         const UElement& U) {
    const auto& M = H.B.mult;
    const long d = H.dim();
    std::vector<DVec> out;
    auto push_unique = [&](const DVec& v) {
        for (const auto& w : out)
            if (w == v) return;
        out.push_back(v);
    };

    Matrix sys(H.field(), d * d, d);
    for (long h = 0; h < d; ++h) {
        Matrix lh = M.left_mult_matrix(M.basis_vec(h));
        Matrix rh = M.right_mult_matrix(M.basis_vec(h));
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) sys.at(h * d + r, c) = lh.at(r, c) - rh.at(r, c);
    }
    for (const auto& w : sys.nullspace()) {
        Scalar e = H.B.eps_vec(w);
        if (e.is_zero()) continue;
        DVec cand(d, Scalar::zero(H.field()));
        Scalar einv = e.inverse();
        for (long i = 0; i < d; ++i) cand[i] = w[i] * einv;
        push_unique(cand);
    }

    try {
        for (const auto& c : solve_pivotal(H, G)) {
            try {
                push_unique(M.invert_element(M.mul(U.u.to_vec(), c.g.to_vec())));
                push_unique(M.invert_element(M.mul(c.g.to_vec(), U.u.to_vec())));
            } catch (const NotInvertible&) {
            }
        }
    } catch (const NoSolution&) {
    }
    return out;
}

}  // namespace

Report run_verify_suite(const AlgebraFile& a, VerifyLevel level,
                        const std::optional<DVec>& eta) {
    Report rep;
    const QuasiHopf& H = a.H;

    rep.merge(verify_quasi_bialgebra(H.B));
    if (level == VerifyLevel::bialgebra || !rep.ok()) return rep;

    rep.merge(verify_quasi_hopf(H));
    if (!rep.ok()) return rep;
    GaugeData G;
    {
        Report tw = check_drinfeld_twist(H, &G);
        rep.merge(tw);
        if (!rep.ok()) return rep;
    }
    rep.merge(verify_s_morphism_identities(H, G));
    if (level == VerifyLevel::hopf || !rep.ok()) return rep;

    if (!a.r) throw FormatError("level requires an r_matrix section");
    RMatrix R;
    {
        Report qt = check_qt(H.B, *a.r, &R);
        rep.merge(qt);
        if (!rep.ok()) return rep;
    }
    if (level == VerifyLevel::qt) return rep;

    UElement U;
    {
        Report uu = check_u_identities(H, R, G, &U);
        rep.merge(uu);
        if (!rep.ok()) return rep;
    }
    rep.merge(verify_balanced_extension(H.B, R));

    if (eta) {
        rep.merge(verify_ribbon_element(H, R, Tensor::from_vec(H.field(), *eta),
                                        RibbonLevel::ribbon));
    } else {
        std::vector<std::string> found;
        for (const auto& cand : derived_eta_candidates(H, G, U)) {
            Report rc = verify_ribbon_element(H, R, Tensor::from_vec(H.field(), cand),
                                              RibbonLevel::ribbon);
            if (rc.ok()) {
                std::ostringstream os;
                os << "[";
                for (long i = 0; i < H.dim(); ++i)
                    os << (i ? ", " : "") << cand[i].str();
                os << "]";
                found.push_back(os.str());
            }
        }
        bool ok = !found.empty();
        std::string wit = ok ? "eta = " + found.front()
                             : "no ribbon element among the derived candidates "
                               "(search may be incomplete; supply --eta)";
        rep.add("ribbon-element-exists", ok, wit);
        if (found.size() > 1)
            rep.info("ribbon-element-count",
                     std::to_string(found.size()) + " verified candidates");
    }
    return rep;
}

}  // namespace qh
