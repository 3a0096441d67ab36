// Transforms of /stats payloads into plottable form. Pure functions; the
// numbers themselves are never recomputed, only reshaped.

export interface CcdfPoint {
  degree: number;
  ccdf: number;
}

export function nodeTotal(histogram: [number, number][]): number {
  return histogram.reduce((sum, [, count]) => sum + count, 0);
}

// P(degree >= d) for every degree listed in the histogram. Degree 0 has no
// place on a log axis, so its bin contributes to the total but gets no point.
export function ccdfPoints(histogram: [number, number][]): CcdfPoint[] {
  const total = nodeTotal(histogram);
  if (total === 0) {
    return [];
  }
  const points: CcdfPoint[] = [];
  let atOrAbove = 0;
  for (let i = histogram.length - 1; i >= 0; i--) {
    const [degree, count] = histogram[i]!;
    atOrAbove += count;
    if (degree >= 1) {
      points.push({ degree, ccdf: atOrAbove / total });
    }
  }
  return points.reverse();
}
