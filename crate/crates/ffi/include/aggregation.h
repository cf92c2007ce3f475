#ifndef AGGREGATION_H
#define AGGREGATION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  AGG_STATUS_OK = 0,
  AGG_STATUS_NULL_POINTER = 1,
  AGG_STATUS_INVALID_ARGUMENT = 2,
  AGG_STATUS_DOMAIN = 3,
  AGG_STATUS_PARSE = 4,
  AGG_STATUS_PANIC = 5,
} AggStatus;

/**
 * An aggregator built from a JSON specification.
 */
typedef struct AggAggregator AggAggregator;

/**
 * A validated fuzzy measure.
 */
typedef struct AggMeasure AggMeasure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The string
 * stays valid until the next call into this library on the same thread.
 */
const char *agg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *agg_version(void);

/**
 * Builds a measure from `2^n` values indexed by subset bitmask
 * (bit `i` set means element `i + 1` belongs to the subset).
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` must be writable.
 */
AggStatus agg_measure_from_array(const double *values, size_t len, AggMeasure **out);

/**
 * Parses a measure document (`{"n":..,"values":{..}}` or `{"n":..,"array":[..]}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
AggStatus agg_measure_from_json(const char *json, AggMeasure **out);

/**
 * # Safety
 * `measure` must be a live handle; `out` must be writable.
 */
AggStatus agg_measure_size(const AggMeasure *measure, size_t *out);

/**
 * # Safety
 * `measure` must be null or a handle not yet freed.
 */
void agg_measure_free(AggMeasure *measure);

/**
 * # Safety
 * `measure` must be a live handle, `x` must point to `len` doubles and
 * `out` must be writable.
 */
AggStatus agg_choquet(const AggMeasure *measure, const double *x, size_t len, double *out);

/**
 * Inputs must lie in `[0, 1]`.
 *
 * # Safety
 * Same contract as [`agg_choquet`].
 */
AggStatus agg_sugeno(const AggMeasure *measure, const double *x, size_t len, double *out);

/**
 * Builds an aggregator from its JSON specification. Relative
 * `measure_file` paths resolve against the working directory.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
AggStatus agg_aggregator_from_json(const char *json, AggAggregator **out);

/**
 * # Safety
 * `aggregator` must be null or a handle not yet freed.
 */
void agg_aggregator_free(AggAggregator *aggregator);

/**
 * Writes the fixed input count, or 0 when any count is accepted.
 *
 * # Safety
 * `aggregator` must be a live handle; `out` must be writable.
 */
AggStatus agg_aggregator_arity(const AggAggregator *aggregator, size_t *out);

/**
 * # Safety
 * `aggregator` must be a live handle, `x` must point to `len` doubles and
 * `out` must be writable.
 */
AggStatus agg_aggregator_eval(const AggAggregator *aggregator,
                              const double *x,
                              size_t len,
                              double *out);

/**
 * Runs one property check and writes its report as a JSON string, to be
 * released with [`agg_string_free`]. `samples = 0` keeps the default.
 * `holds` (optional) receives the verdict.
 *
 * # Safety
 * `aggregator` must be a live handle, `property` a NUL-terminated string,
 * `report_out` writable and `holds` null or writable.
 */
AggStatus agg_check(const AggAggregator *aggregator,
                    const char *property,
                    uint64_t seed,
                    size_t samples,
                    char **report_out,
                    bool *holds);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void agg_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* AGGREGATION_H */
