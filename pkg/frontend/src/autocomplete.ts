/** Ticker autocomplete: case-insensitive prefix matching over the symbol list. */

export const MAX_SUGGESTIONS = 10;

export function prefixMatches(symbols: string[], prefix: string, cap = MAX_SUGGESTIONS): string[] {
  const needle = prefix.trim().toUpperCase();
  if (!needle) return [];
  const out: string[] = [];
  for (const symbol of [...symbols].sort()) {
    if (symbol.toUpperCase().startsWith(needle)) {
      out.push(symbol);
      if (out.length >= cap) break;
    }
  }
  return out;
}
