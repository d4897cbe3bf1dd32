#ifndef LATTICELAB_H
#define LATTICELAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values match the library error kinds. */
enum {
  LL_OK = 0,
  LL_NON_SYMMETRIC = 1,
  LL_DEGENERATE,
  LL_ZERO_SCALE,
  LL_NOT_DEFINITE,
  LL_RANK_TOO_LARGE,
  LL_INDEFINITE_LATTICE,
  LL_ODD_LATTICE,
  LL_CAP_EXCEEDED,
  LL_SYNTAX_ERROR,
  LL_REALIZABILITY_ERROR,
  LL_NOT_ISOTROPIC,
  LL_BAD_SIGNATURE,
  LL_NOT_MAXIMAL_RANK,
  LL_ASSUMPTION_MISSING,
  LL_MIXED_WEIGHT_CLASSES,
  LL_DATA_FILE_MISSING,
  LL_INVALID_ARGUMENT,
  LL_INTERNAL
};

typedef struct ll_lattice ll_lattice;
typedef struct ll_form ll_form;

/* Name of a status code, e.g. "SyntaxError". */
const char* ll_error_name(int code);
/* Message of the last failing call on this thread ("" if none). */
const char* ll_last_error(void);
/* Releases strings returned through char** out-parameters. */
void ll_string_free(char* s);

/* Lattices. `gram` is row-major n x n. */
int ll_lattice_from_gram(const int64_t* gram, size_t n, ll_lattice** out);
/* JSON: a list of rows or {"gram": [[...]]}. */
int ll_lattice_from_json(const char* json, ll_lattice** out);
/* Registry name such as "E6", "A2", "E6+A1", scaled by `scale`. */
int ll_lattice_named(const char* name, int64_t scale, ll_lattice** out);
void ll_lattice_free(ll_lattice* lattice);
int ll_lattice_info_json(const ll_lattice* lattice, char** out);
int ll_lattice_short_vectors_json(const ll_lattice* lattice, int64_t norm, char** out);
int ll_lattice_discriminant_form(const ll_lattice* lattice, ll_form** out);

/* Finite quadratic forms: a genus symbol string or the JSON form schema. */
int ll_form_parse(const char* text, ll_form** out);
void ll_form_free(ll_form* form);
int ll_form_to_json(const ll_form* form, char** out);
int ll_form_symbol(const ll_form* form, char** out);
int ll_form_signature_mod8(const ll_form* form, int* out);
int ll_form_isomorphic(const ll_form* a, const ll_form* b, int* out);
int ll_form_direct_sum(const ll_form* a, const ll_form* b, ll_form** out);
int ll_form_negate(const ll_form* form, ll_form** out);
int ll_form_isotropic_subgroups_json(const ll_form* form, char** out);

/* Binary forms. sign is +1 or -1. */
int ll_rank2_enumerate_json(int64_t det, int even_only, int sign, char** out);
int ll_rank2_reduce_json(int64_t a, int64_t b, int64_t c, int sign, char** out);
/* `text` uses the notation "-(a^b c)". */
int ll_rank2_automorphism_orders_json(const char* text, char** out);

/* Existence of an even lattice with signature (n_plus, n_minus) and form q. */
int ll_nikulin_exists_json(int n_plus, int n_minus, const ll_form* form, char** out);
/* Primitive embedding of (n_plus, n_minus, q) into an even unimodular (l_plus, l_minus) lattice. */
int ll_nikulin_embed_json(int n_plus, int n_minus, const ll_form* form, int l_plus, int l_minus, char** out);
/* Overlattices of S + R keeping S primitive; q_S coordinates first. */
int ll_saturate_json(const ll_form* q_s, const ll_form* q_r, char** out);

/* Case reports. row = 0 selects every row; degree is 0, 2, 4 or 6. */
int ll_cubic_report_json(int row, char** out);
int ll_k3_report_json(int degree, int row, char** out);
int ll_condition_check_json(int rank_k, const ll_form* q_k, char** out);

/* Diagonal actions: k generators, weights row-major k x 6. */
int ll_family_dimension(const int64_t* orders, const int64_t* weights, const int64_t* w0, size_t k, int64_t* out);
/* monomials: count x 6 exponent vectors. */
int ll_symplectic_check(int64_t order, const int64_t* weights, const int64_t* monomials, size_t count, int* out);
/* Bundled normal-form cases with computed and expected dimensions. */
int ll_normal_form_cases_json(char** out);

#ifdef __cplusplus
}
#endif

#endif
