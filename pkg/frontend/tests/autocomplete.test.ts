import { describe, expect, it } from 'vitest';

import { prefixMatches } from '../src/autocomplete.js';

describe('prefixMatches', () => {
  it('returns sorted case-insensitive prefix matches', () => {
    expect(prefixMatches(['PBR', 'PBI', 'AAPL'], 'PB')).toEqual(['PBI', 'PBR']);
    expect(prefixMatches(['PBR', 'PBI', 'AAPL'], 'pb')).toEqual(['PBI', 'PBR']);
  });

  it('returns nothing for an empty prefix', () => {
    expect(prefixMatches(['PBR', 'PBI'], '')).toEqual([]);
    expect(prefixMatches(['PBR', 'PBI'], '   ')).toEqual([]);
  });

  it('returns nothing when no symbol matches', () => {
    expect(prefixMatches(['PBR', 'PBI'], 'XYZ')).toEqual([]);
  });

  it('caps the suggestion list at ten', () => {
    const symbols = Array.from({ length: 30 }, (_, i) => `SYM${String(i).padStart(2, '0')}`);
    expect(prefixMatches(symbols, 'SYM')).toHaveLength(10);
  });
});
